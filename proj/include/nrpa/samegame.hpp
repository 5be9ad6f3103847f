#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "nrpa/common.hpp"

namespace nrpa::samegame {

using Color = std::uint8_t;
inline constexpr Color kEmpty = 0;
inline constexpr int kClearBonus = 1000;

/// Grid of colour ids, 0 for empty. x runs left to right, y bottom to top.
class Board {
public:
    Board() = default;
    Board(int width, int height);

    /// Rows given top row first, as in the text format.
    static Board fromRows(const std::vector<std::vector<int>>& rowsTopFirst);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int index(int x, int y) const noexcept { return x * height_ + y; }
    int xOf(int idx) const noexcept { return idx / height_; }
    int yOf(int idx) const noexcept { return idx % height_; }

    Color at(int x, int y) const { return cells_[static_cast<std::size_t>(index(x, y))]; }
    Color at(int idx) const { return cells_[static_cast<std::size_t>(idx)]; }
    void set(int x, int y, Color c) { cells_[static_cast<std::size_t>(index(x, y))] = c; }
    void clear(int idx) { cells_[static_cast<std::size_t>(idx)] = kEmpty; }

    int tileCount() const noexcept;
    bool empty() const noexcept { return tileCount() == 0; }
    int colorCount() const noexcept;  // distinct colours present

    /// Gravity inside every column, then shift non-empty columns left.
    void normalize();

    const std::vector<Color>& cells() const noexcept { return cells_; }
    friend bool operator==(const Board&, const Board&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Color> cells_;
};

/// Height lines of width colours, top row first. A row is either a run of
/// digits ("12345") or whitespace-separated integers. 0 marks an empty cell.
Board parseBoard(std::istream& in);
Board parseBoard(const std::string& text);
Board loadBoard(const std::string& path);

/// Text form accepted by parseBoard: digit rows, top first, '\n' after each.
std::string formatBoard(const Board& board);

/// A maximal 4-connected group of one colour, size >= 2.
struct SgMove {
    Color color = kEmpty;
    std::vector<std::uint16_t> cells;  // sorted cell indices
    MoveCode code = 0;

    int size() const noexcept { return static_cast<int>(cells.size()); }
};

struct SgState {
    Board board;
    int scoreSoFar = 0;
};

/// Every removable group, in column-major scan order of its first cell.
std::vector<SgMove> components(const Board& board);

/// True when no group of two or more remains.
bool hasNoMoves(const Board& board);

/// Removes the group, applies gravity and column collapse and scores
/// (n - 2)^2, plus the bonus when the board is left empty. Throws when the
/// move is not a current group of the board.
SgState applyMove(SgState state, const SgMove& move);

/// Drops partial removals of the dominant colour (most tiles on the board,
/// lowest id on ties). Pairs of that colour survive when allowPairs is set.
/// Never returns an empty list when `moves` is non-empty.
std::vector<SgMove> tabuFilter(const SgState& state, const std::vector<SgMove>& moves, bool allowPairs);

/// Exact best final score from `board`. Limited to 4x4 boards with <= 3 colours.
int bruteForceBest(const Board& board);

struct SameGameOptions {
    bool tabu = true;
    bool allowPairs = false;
};

class SameGameProblem {
public:
    using State = SgState;
    using Move = SgMove;

    explicit SameGameProblem(Board board, SameGameOptions options = {})
        : board_(std::move(board)), options_(options) {}

    const Board& board() const noexcept { return board_; }
    const SameGameOptions& options() const noexcept { return options_; }

    State root() const { return {board_, 0}; }
    bool isTerminal(const State& s) const { return hasNoMoves(s.board); }
    void legalMoves(const State& s, std::vector<Move>& out) const;
    static MoveCode code(const Move& m) noexcept { return m.code; }
    void apply(State& s, const Move& m) const;
    double score(const State& s) const { return s.scoreSoFar; }

private:
    Board board_;
    SameGameOptions options_;
};

} // namespace nrpa::samegame
