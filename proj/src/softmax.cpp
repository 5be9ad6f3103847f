#include "nrpa/softmax.hpp"

#include <algorithm>
#include <cmath>

#include "nrpa/common.hpp"

namespace nrpa {

double shiftedExponentials(std::span<const double> weights, std::span<double> out) {
    if (weights.empty()) throw Error("no legal moves");
    double maxW = weights[0];
    for (double w : weights) {
        if (!std::isfinite(w)) throw Error("non-finite weight in softmax");
        maxW = std::max(maxW, w);
    }
    double z = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        out[i] = std::exp(weights[i] - maxW);
        z += out[i];
    }
    return z;
}

std::vector<double> softmaxProbabilities(std::span<const double> weights) {
    std::vector<double> p(weights.size());
    const double z = shiftedExponentials(weights, p);
    for (double& x : p) x /= z;
    return p;
}

} // namespace nrpa
