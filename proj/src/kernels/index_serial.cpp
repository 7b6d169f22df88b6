#include "tagscape/kernels.hpp"

#include <algorithm>

namespace tagscape::kernels {

std::vector<double> score_hypotheses_serial(std::span<const SizedMark> base, std::span<const Hypothesis> hyps)
{
    std::vector<double> scores;
    scores.reserve(hyps.size());
    std::vector<SizedMark> scratch;
    for (const Hypothesis& h : hyps) {
        scratch.clear();
        for (std::size_t i = 0; i < base.size(); ++i)
            if (!std::binary_search(h.removed.begin(), h.removed.end(), i)) scratch.push_back(base[i]);
        scratch.push_back(h.added);
        scores.push_back(overall_index(scratch).overall);
    }
    return scores;
}

} // namespace tagscape::kernels
