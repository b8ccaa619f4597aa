#include "mtcompare/similarity.hpp"

#include <stdexcept>

#include "mtcompare/metrics.hpp"

namespace mtcompare {

OverlapMatrix pairwise_overlap(const std::vector<SystemOutput> &systems) {
    if (systems.size() < 2) {
        throw std::invalid_argument("pairwise overlap needs at least 2 systems, got " + std::to_string(systems.size()));
    }
    const std::size_t k = systems.size();
    OverlapMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        m(i, i) = 100.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j) m(i, j) = chrf1(systems[i].corpus, systems[j].corpus).corpus.value;
        }
    }
    return m;
}

GroupAverages group_averages(const OverlapMatrix &matrix, const std::vector<Paradigm> &paradigms) {
    if (paradigms.size() != matrix.size()) {
        throw std::invalid_argument("group averages: " + std::to_string(paradigms.size()) + " labels for a " +
                                    std::to_string(matrix.size()) + "x" + std::to_string(matrix.size()) + " matrix");
    }
    double sums[3] = {0, 0, 0};
    std::size_t counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            std::size_t group = 2;
            if (paradigms[i] == paradigms[j]) group = paradigms[i] == Paradigm::NMT ? 0 : 1;
            sums[group] += matrix(i, j);
            ++counts[group];
        }
    }
    auto make = [&](std::size_t g) {
        GroupAverage avg;
        avg.pairs = counts[g];
        if (counts[g] > 0) avg.mean = sums[g] / static_cast<double>(counts[g]);
        return avg;
    };
    return {make(0), make(1), make(2)};
}

} // namespace mtcompare
