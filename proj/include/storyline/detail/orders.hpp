#pragma once

#include <algorithm>
#include <vector>

namespace storyline::detail {

// All interleavings of `base` (order preserved) with every permutation of
// `newcomers`, i.e. all total orders extending `base` by the newcomers.
// There are (|base|+|newcomers|)! / |base|! of them.
template <typename T>
std::vector<std::vector<T>> extend_order(const std::vector<T>& base, std::vector<T> newcomers) {
    std::sort(newcomers.begin(), newcomers.end());
    std::vector<std::vector<T>> result;
    std::vector<T> merged;
    merged.reserve(base.size() + newcomers.size());

    auto interleave = [&](auto&& self, std::size_t bi, std::size_t ni,
                          const std::vector<T>& perm) -> void {
        if (bi == base.size() && ni == perm.size()) {
            result.push_back(merged);
            return;
        }
        if (bi < base.size()) {
            merged.push_back(base[bi]);
            self(self, bi + 1, ni, perm);
            merged.pop_back();
        }
        if (ni < perm.size()) {
            merged.push_back(perm[ni]);
            self(self, bi, ni + 1, perm);
            merged.pop_back();
        }
    };

    if (newcomers.empty()) {
        result.push_back(base);
        return result;
    }
    std::vector<T> perm = newcomers;
    do {
        interleave(interleave, 0, 0, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

}  // namespace storyline::detail
