#include "nrpa/samegame.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace nrpa::samegame {

Board::Board(int width, int height) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error("board dimensions must be >= 0");
    if (width * height > 0xffff) throw Error("board too large");
    cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), kEmpty);
}

Board Board::fromRows(const std::vector<std::vector<int>>& rowsTopFirst) {
    const int h = static_cast<int>(rowsTopFirst.size());
    const int w = h == 0 ? 0 : static_cast<int>(rowsTopFirst.front().size());
    Board b(w, h);
    for (int r = 0; r < h; ++r) {
        const auto& row = rowsTopFirst[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != w) throw Error("board rows differ in length");
        for (int x = 0; x < w; ++x) {
            const int c = row[static_cast<std::size_t>(x)];
            if (c < 0 || c > 255) throw Error("colour out of range");
            b.set(x, h - 1 - r, static_cast<Color>(c));
        }
    }
    return b;
}

int Board::tileCount() const noexcept {
    return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [](Color c) { return c != kEmpty; }));
}

int Board::colorCount() const noexcept {
    std::array<bool, 256> present{};
    int n = 0;
    for (Color c : cells_)
        if (c != kEmpty && !present[c]) {
            present[c] = true;
            ++n;
        }
    return n;
}

void Board::normalize() {
    int dst = 0;
    for (int x = 0; x < width_; ++x) {
        int fill = 0;
        for (int y = 0; y < height_; ++y) {
            const Color c = at(x, y);
            if (c != kEmpty) set(dst, fill++, c);
        }
        if (fill == 0) continue;
        for (int y = fill; y < height_; ++y) set(dst, y, kEmpty);
        ++dst;
    }
    for (int x = dst; x < width_; ++x)
        for (int y = 0; y < height_; ++y) set(x, y, kEmpty);
}

Board parseBoard(std::istream& in) {
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<int> row;
        if (line.find_first_of(" \t") == std::string::npos) {
            for (char ch : line) {
                if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error("bad board character '" + std::string(1, ch) + "'");
                row.push_back(ch - '0');
            }
        } else {
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) {
                if (!std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                    throw Error("bad board token '" + tok + "'");
                row.push_back(std::stoi(tok));
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("empty board file");
    Board b = Board::fromRows(rows);
    Board settled = b;
    settled.normalize();
    if (!(settled == b)) throw Error("board has floating tiles or gaps between columns");
    return b;
}

Board parseBoard(const std::string& text) {
    std::istringstream in(text);
    return parseBoard(in);
}

Board loadBoard(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open board file '" + path + "'");
    return parseBoard(in);
}

std::string formatBoard(const Board& board) {
    std::string out;
    for (int y = board.height() - 1; y >= 0; --y) {
        for (int x = 0; x < board.width(); ++x) {
            const int c = board.at(x, y);
            if (c > 9) throw Error("digit rows only hold colours 0..9");
            out.push_back(static_cast<char>('0' + c));
        }
        out.push_back('\n');
    }
    return out;
}

namespace {

MoveCode groupCode(Color color, const std::vector<std::uint16_t>& cells) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mixByte = [&h](std::uint8_t b) {
        h ^= b;
        h *= 0x100000001b3ULL;
    };
    mixByte(color);
    for (auto c : cells) {
        mixByte(static_cast<std::uint8_t>(c & 0xff));
        mixByte(static_cast<std::uint8_t>(c >> 8));
    }
    return static_cast<std::uint32_t>(h ^ (h >> 32));
}

// Collects the group containing `start` into `cells` (unsorted) and marks it.
void floodFill(const Board& b, int start, std::vector<bool>& mark, std::vector<std::uint16_t>& cells) {
    const Color color = b.at(start);
    cells.clear();
    cells.push_back(static_cast<std::uint16_t>(start));
    mark[static_cast<std::size_t>(start)] = true;
    for (std::size_t head = 0; head < cells.size(); ++head) {
        const int idx = cells[head];
        const int x = b.xOf(idx);
        const int y = b.yOf(idx);
        const std::array<std::pair<int, int>, 4> nbrs{{{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}};
        for (auto [nx, ny] : nbrs) {
            if (nx < 0 || ny < 0 || nx >= b.width() || ny >= b.height()) continue;
            const int n = b.index(nx, ny);
            if (mark[static_cast<std::size_t>(n)] || b.at(n) != color) continue;
            mark[static_cast<std::size_t>(n)] = true;
            cells.push_back(static_cast<std::uint16_t>(n));
        }
    }
}

void removeGroup(SgState& s, const SgMove& m) {
    for (auto idx : m.cells) s.board.clear(idx);
    s.board.normalize();
    const int n = m.size();
    s.scoreSoFar += (n - 2) * (n - 2);
    if (s.board.empty()) s.scoreSoFar += kClearBonus;
}

} // namespace

std::vector<SgMove> components(const Board& board) {
    std::vector<SgMove> out;
    std::vector<bool> mark(board.cells().size(), false);
    std::vector<std::uint16_t> cells;
    for (int idx = 0; idx < static_cast<int>(board.cells().size()); ++idx) {
        if (mark[static_cast<std::size_t>(idx)] || board.at(idx) == kEmpty) continue;
        floodFill(board, idx, mark, cells);
        if (cells.size() < 2) continue;
        std::sort(cells.begin(), cells.end());
        SgMove m;
        m.color = board.at(idx);
        m.cells = cells;
        m.code = groupCode(m.color, m.cells);
        out.push_back(std::move(m));
    }
    return out;
}

bool hasNoMoves(const Board& b) {
    for (int x = 0; x < b.width(); ++x)
        for (int y = 0; y < b.height(); ++y) {
            const Color c = b.at(x, y);
            if (c == kEmpty) continue;
            if (y + 1 < b.height() && b.at(x, y + 1) == c) return false;
            if (x + 1 < b.width() && b.at(x + 1, y) == c) return false;
        }
    return true;
}

SgState applyMove(SgState state, const SgMove& move) {
    if (move.cells.size() < 2) throw Error("stale move: groups need at least two tiles");
    const Board& b = state.board;
    const int first = move.cells.front();
    if (first >= static_cast<int>(b.cells().size()) || b.at(first) != move.color || move.color == kEmpty)
        throw Error("stale move: colour does not match the board");
    std::vector<bool> mark(b.cells().size(), false);
    std::vector<std::uint16_t> cells;
    floodFill(b, first, mark, cells);
    std::sort(cells.begin(), cells.end());
    if (cells != move.cells) throw Error("stale move: not a current group of the board");
    removeGroup(state, move);
    return state;
}

std::vector<SgMove> tabuFilter(const SgState& state, const std::vector<SgMove>& moves, bool allowPairs) {
    if (moves.empty()) return {};
    std::array<int, 256> counts{};
    for (Color c : state.board.cells())
        if (c != kEmpty) ++counts[c];
    const auto dominant = static_cast<Color>(std::max_element(counts.begin() + 1, counts.end()) - counts.begin());
    const int total = counts[dominant];

    std::vector<SgMove> kept;
    kept.reserve(moves.size());
    for (const auto& m : moves) {
        const bool partial = m.color == dominant && m.size() < total;
        if (!partial || (allowPairs && m.size() == 2)) kept.push_back(m);
    }
    return kept.empty() ? moves : kept;
}

void SameGameProblem::legalMoves(const State& s, std::vector<Move>& out) const {
    auto moves = components(s.board);
    if (options_.tabu) moves = tabuFilter(s, moves, options_.allowPairs);
    for (auto& m : moves) out.push_back(std::move(m));
}

void SameGameProblem::apply(State& s, const Move& m) const { removeGroup(s, m); }

namespace {

int bestFrom(const Board& board, std::unordered_map<std::string, int>& memo) {
    std::string key(board.cells().begin(), board.cells().end());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int best = 0;
    for (const auto& m : components(board)) {
        const SgState next = applyMove({board, 0}, m);
        best = std::max(best, next.scoreSoFar + bestFrom(next.board, memo));
    }
    memo.emplace(std::move(key), best);
    return best;
}

} // namespace

int bruteForceBest(const Board& board) {
    if (board.width() > 4 || board.height() > 4 || board.colorCount() > 3)
        throw Error("brute force limited to 4x4 boards with at most 3 colours");
    std::unordered_map<std::string, int> memo;
    return bestFrom(board, memo);
}

} // namespace nrpa::samegame
