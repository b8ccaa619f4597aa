#include <cmath>
#include <stdexcept>

#include "mtcompare/fluency.hpp"
#include "mtcompare/metrics.hpp"
#include "mtcompare/stats.hpp"

namespace mtcompare {

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

std::string LengthBucket::label() const {
    if (!hi) return ">" + std::to_string(lo - 1);
    return std::to_string(lo) + "-" + std::to_string(*hi);
}

std::vector<LengthBucket> bucket_by_length(std::span<const std::size_t> lengths, std::size_t width, std::size_t cap) {
    if (width == 0) throw std::invalid_argument("bucket width must be at least 1");
    std::vector<LengthBucket> buckets;
    for (std::size_t lo = 1; lo <= cap; lo += width) {
        LengthBucket b;
        b.lo = lo;
        b.hi = std::min(lo + width - 1, cap);
        buckets.push_back(b);
    }
    LengthBucket overflow;
    overflow.lo = cap + 1;
    buckets.push_back(overflow);

    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const std::size_t len = lengths[i];
        std::size_t slot = buckets.size() - 1;
        if (len <= cap) slot = len == 0 ? 0 : (len - 1) / width;
        buckets[slot].indices.push_back(i);
        buckets[slot].mean_length += static_cast<double>(len);
    }
    for (auto &b : buckets) {
        if (!b.indices.empty()) b.mean_length /= static_cast<double>(b.indices.size());
    }
    return buckets;
}

std::vector<LengthBucket> bucket_by_length(const Corpus &source, std::size_t width, std::size_t cap) {
    std::vector<std::size_t> lengths;
    lengths.reserve(source.size());
    for (const auto &s : source.segments) lengths.push_back(s.size());
    return bucket_by_length(lengths, width, cap);
}

LengthCurve length_curve(const EvalBundle &bundle, const std::string &nmt_id, const std::string &pbmt_id,
                         std::size_t width, std::size_t cap) {
    const auto *nmt = bundle.find_system(nmt_id);
    const auto *pbmt = bundle.find_system(pbmt_id);
    if (!nmt || !pbmt) throw std::invalid_argument("length curve: unknown system '" + (nmt ? pbmt_id : nmt_id) + "'");
    const std::size_t n = bundle.reference.size();
    if (bundle.source.size() != n || nmt->corpus.size() != n || pbmt->corpus.size() != n) {
        throw std::invalid_argument("length curve: corpora differ in segment count");
    }
    std::vector<ChrfStats> nmt_stats, pbmt_stats;
    nmt_stats.reserve(n);
    pbmt_stats.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        nmt_stats.push_back(chrf_stats(nmt->corpus.segments[i], bundle.reference.segments[i]));
        pbmt_stats.push_back(chrf_stats(pbmt->corpus.segments[i], bundle.reference.segments[i]));
    }

    LengthCurve curve;
    curve.nmt_id = nmt_id;
    curve.pbmt_id = pbmt_id;
    std::vector<double> xs, ys;
    for (const auto &bucket : bucket_by_length(bundle.source, width, cap)) {
        LengthPoint p;
        p.label = bucket.label();
        p.lo = bucket.lo;
        p.hi = bucket.hi;
        p.segments = bucket.indices.size();
        p.mean_length = bucket.mean_length;
        if (!bucket.empty()) {
            p.chrf_nmt = chrf1_subset(nmt_stats, bucket.indices);
            p.chrf_pbmt = chrf1_subset(pbmt_stats, bucket.indices);
            p.relative_improvement = relative_difference(p.chrf_nmt, p.chrf_pbmt);
            if (p.relative_improvement) {
                xs.push_back(p.mean_length);
                ys.push_back(*p.relative_improvement);
            }
        }
        curve.points.push_back(std::move(p));
    }
    curve.correlation = pearson(xs, ys);
    return curve;
}

LengthCurve macro_average(std::span<const LengthCurve> curves) {
    LengthCurve out;
    if (curves.empty()) return out;
    out.nmt_id = "NMT";
    out.pbmt_id = "PBMT";
    const std::size_t n_points = curves.front().points.size();
    for (const auto &c : curves) {
        if (c.points.size() != n_points) throw std::invalid_argument("macro average: curves use different buckets");
    }
    std::vector<double> xs, ys;
    for (std::size_t b = 0; b < n_points; ++b) {
        LengthPoint p;
        p.label = curves.front().points[b].label;
        p.lo = curves.front().points[b].lo;
        p.hi = curves.front().points[b].hi;
        double rel = 0, len = 0, cn = 0, cp = 0;
        std::size_t used = 0;
        for (const auto &c : curves) {
            const auto &q = c.points[b];
            p.segments += q.segments;
            if (q.segments == 0 || !q.relative_improvement) continue;
            rel += *q.relative_improvement;
            len += q.mean_length;
            cn += q.chrf_nmt;
            cp += q.chrf_pbmt;
            ++used;
        }
        if (used > 0) {
            const double k = static_cast<double>(used);
            p.relative_improvement = rel / k;
            p.mean_length = len / k;
            p.chrf_nmt = cn / k;
            p.chrf_pbmt = cp / k;
            xs.push_back(p.mean_length);
            ys.push_back(*p.relative_improvement);
        }
        out.points.push_back(std::move(p));
    }
    out.correlation = pearson(xs, ys);
    return out;
}

} // namespace mtcompare
