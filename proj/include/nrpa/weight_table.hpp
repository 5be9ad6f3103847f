#pragma once

#include <cmath>
#include <unordered_map>

#include "nrpa/common.hpp"

namespace nrpa {

/// Policy weights keyed by move code. Codes never written read as 0.0.
class WeightTable {
public:
    double get(MoveCode code) const noexcept {
        auto it = weights_.find(code);
        return it == weights_.end() ? 0.0 : it->second;
    }

    void set(MoveCode code, double w) {
        if (!std::isfinite(w)) throw Error("non-finite policy weight");
        weights_[code] = w;
    }

    void add(MoveCode code, double delta) {
        double& w = weights_[code];
        w += delta;
        if (!std::isfinite(w)) throw Error("non-finite policy weight");
    }

    std::size_t size() const noexcept { return weights_.size(); }
    bool empty() const noexcept { return weights_.empty(); }

    auto begin() const noexcept { return weights_.begin(); }
    auto end() const noexcept { return weights_.end(); }

    /// Tables compare equal when every code reads the same weight,
    /// so an explicit 0.0 entry equals an absent one.
    friend bool operator==(const WeightTable& a, const WeightTable& b) {
        for (const auto& [code, w] : a.weights_)
            if (b.get(code) != w) return false;
        for (const auto& [code, w] : b.weights_)
            if (a.get(code) != w) return false;
        return true;
    }

private:
    std::unordered_map<MoveCode, double> weights_;
};

} // namespace nrpa
