#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mtcompare/corpus.hpp"

namespace mtcompare {

// Square matrix of corpus-level chrF1 between system outputs, row-major.
class OverlapMatrix {
  public:
    explicit OverlapMatrix(std::size_t n = 0) : n_(n), cells_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double &operator()(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

  private:
    std::size_t n_;
    std::vector<double> cells_;
};

// Entry (i, j) scores system i as hypothesis against system j as reference.
// The diagonal is 100. Throws std::invalid_argument for fewer than 2 systems.
OverlapMatrix pairwise_overlap(const std::vector<SystemOutput> &systems);

struct GroupAverage {
    std::optional<double> mean; // nullopt when the group has no pair
    std::size_t pairs = 0;
};

struct GroupAverages {
    GroupAverage nmt_nmt;
    GroupAverage pbmt_pbmt;
    GroupAverage cross;
};

// Unweighted means over unordered pairs i < j.
GroupAverages group_averages(const OverlapMatrix &matrix, const std::vector<Paradigm> &paradigms);

} // namespace mtcompare
