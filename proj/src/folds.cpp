#include "survboost/folds.hpp"

#include "survboost/errors.hpp"
#include "survboost/rng.hpp"

#include <algorithm>

namespace survboost {

std::vector<std::vector<int>> stratified_folds(std::span<const int> pos_indices,
                                               std::span<const int> neg_indices,
                                               int k, std::uint64_t seed) {
    if (k < 2) throw InvalidSpec("stratified folds need k >= 2");
    if (static_cast<int>(pos_indices.size()) < k || static_cast<int>(neg_indices.size()) < k)
        throw FoldTooSmall("each class needs at least k labeled samples; reduce the fold count");

    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    Rng rng(derive_seed(seed, {tag64("stratified-folds")}));
    for (auto cls : {pos_indices, neg_indices}) {
        std::vector<int> shuffled(cls.begin(), cls.end());
        rng.shuffle(shuffled);
        for (std::size_t j = 0; j < shuffled.size(); ++j)
            folds[j % static_cast<std::size_t>(k)].push_back(shuffled[j]);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

} // namespace survboost
