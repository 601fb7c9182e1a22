#ifndef SURVBOOST_FOLDS_HPP
#define SURVBOOST_FOLDS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace survboost {

/// Class-stratified k-fold assignment. Each class's indices are shuffled
/// with a seed-derived generator and dealt round-robin, so every fold holds
/// both classes whenever each class has at least k members (enforced).
/// Returns k index lists partitioning the input indices.
/// Throws FoldTooSmall when a class has fewer than k members, InvalidSpec
/// when k < 2.
std::vector<std::vector<int>> stratified_folds(std::span<const int> pos_indices,
                                               std::span<const int> neg_indices,
                                               int k, std::uint64_t seed);

} // namespace survboost

#endif // SURVBOOST_FOLDS_HPP
