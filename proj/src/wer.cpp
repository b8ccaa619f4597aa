#include <algorithm>
#include <unordered_map>

#include "mtcompare/metrics.hpp"

namespace mtcompare {

double EditScript::wer() const {
    const std::size_t ref_len = ref_labels.size();
    return static_cast<double>(distance) / static_cast<double>(std::max<std::size_t>(1, ref_len));
}

std::size_t EditScript::count_hyp(EditOp op) const {
    return static_cast<std::size_t>(std::count(hyp_labels.begin(), hyp_labels.end(), op));
}

std::size_t EditScript::count_ref(EditOp op) const {
    return static_cast<std::size_t>(std::count(ref_labels.begin(), ref_labels.end(), op));
}

EditScript wer_align(const Segment &hyp, const Segment &ref) {
    const std::size_t m = ref.size();
    const std::size_t n = hyp.size();
    const std::size_t cols = n + 1;
    // cost[i * cols + j]: distance between ref[0, i) and hyp[0, j).
    std::vector<std::size_t> cost((m + 1) * cols);
    for (std::size_t i = 0; i <= m; ++i) cost[i * cols] = i;
    for (std::size_t j = 0; j <= n; ++j) cost[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t diag = cost[(i - 1) * cols + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
            const std::size_t del = cost[(i - 1) * cols + j] + 1;
            const std::size_t ins = cost[i * cols + j - 1] + 1;
            cost[i * cols + j] = std::min({diag, del, ins});
        }
    }

    EditScript script;
    script.distance = cost[m * cols + n];
    script.hyp_labels.assign(n, EditOp::Match);
    script.ref_labels.assign(m, EditOp::Match);
    std::size_t i = m, j = n;
    while (i > 0 || j > 0) {
        const std::size_t here = cost[i * cols + j];
        if (i > 0 && j > 0) {
            const std::size_t diag = cost[(i - 1) * cols + j - 1];
            if (ref[i - 1] == hyp[j - 1] && diag == here) {
                --i, --j;
                continue;
            }
            if (ref[i - 1] != hyp[j - 1] && diag + 1 == here) {
                --i, --j;
                script.ref_labels[i] = EditOp::Substitution;
                script.hyp_labels[j] = EditOp::Substitution;
                continue;
            }
        }
        if (i > 0 && cost[(i - 1) * cols + j] + 1 == here) {
            --i;
            script.ref_labels[i] = EditOp::Deletion;
            continue;
        }
        --j;
        script.hyp_labels[j] = EditOp::Insertion;
    }
    return script;
}

std::size_t PerErrors::hyp_errors() const { return static_cast<std::size_t>(std::count(hyp.begin(), hyp.end(), true)); }

std::size_t PerErrors::ref_errors() const { return static_cast<std::size_t>(std::count(ref.begin(), ref.end(), true)); }

PerErrors per_errors(const Segment &hyp, const Segment &ref) {
    PerErrors out;
    out.hyp.assign(hyp.size(), true);
    out.ref.assign(ref.size(), true);
    // Unconsumed reference positions per word, leftmost at the back.
    std::unordered_map<std::string_view, std::vector<std::size_t>> available;
    for (std::size_t k = ref.size(); k-- > 0;) available[ref[k]].push_back(k);
    for (std::size_t j = 0; j < hyp.size(); ++j) {
        const auto it = available.find(hyp[j]);
        if (it == available.end() || it->second.empty()) continue;
        out.ref[it->second.back()] = false;
        it->second.pop_back();
        out.hyp[j] = false;
    }
    return out;
}

} // namespace mtcompare
