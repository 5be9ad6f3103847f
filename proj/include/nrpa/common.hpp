#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrpa {

/// Integer identity of a move, used to index the policy.
using MoveCode = std::uint64_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A move-code list could not be replayed from the problem root.
class ReplayError : public Error {
public:
    ReplayError(std::size_t step, const std::string& what)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Ordered move codes from the root together with the terminal score.
struct MoveSequence {
    std::vector<MoveCode> moves;
    double score = 0.0;

    friend bool operator==(const MoveSequence&, const MoveSequence&) = default;
};

} // namespace nrpa
