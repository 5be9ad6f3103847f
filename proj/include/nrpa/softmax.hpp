#pragma once

#include <span>
#include <vector>

namespace nrpa {

/// p_i = exp(w_i) / sum_j exp(w_j), shifted by the max weight so large
/// magnitudes do not overflow. Throws on empty or non-finite input.
std::vector<double> softmaxProbabilities(std::span<const double> weights);

/// Writes the unnormalised shifted exponentials exp(w_i - max w) into `out`
/// and returns their sum. Same preconditions as softmaxProbabilities.
double shiftedExponentials(std::span<const double> weights, std::span<double> out);

} // namespace nrpa
