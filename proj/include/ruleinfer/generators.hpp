#pragma once

#include <string>

#include "ruleinfer/transition.hpp"

namespace ruleinfer {

enum class GrammarEncoding { undirected, directed, marked };

struct GrammarSpec {
    GrammarEncoding encoding = GrammarEncoding::marked;
    std::size_t max_len = 5;
};

/// Sentential forms of S → AT, A → ε | AA | 0 | 10, T → ε | T1 as path graphs.
/// Inputs are all forms of length ≤ max_len derivable from S; transitions are
/// all single rewrites of those forms. The rewritten nonterminal is deleted and
/// right-hand-side vertices are fresh.
[[nodiscard]] TransitionSystem gen_grammar(const GrammarSpec& spec);

/// The string spelled by a grammar graph (markers dropped); for diagnostics.
[[nodiscard]] std::string grammar_string(const Graph& g, const LabelPoset& poset);

enum class Reachability {
    any,     ///< states reachable by arbitrary legal play
    modeled, ///< only the modeled player restricted to non-losing moves
    both     ///< both players restricted to non-losing moves
};

struct GameSpec {
    char player = 'O';
    Reachability reach = Reachability::any;
};

/// Tic-tac-toe states (3×3 grid graphs, labels _, O, X) where `player` moves
/// and has not already lost under perfect play, with the moves that keep it
/// that way. A game ends on three in a row, on a full board, or once every
/// line holds both symbols. Boards are taken up to the symmetries of the grid.
[[nodiscard]] TransitionSystem gen_tictactoe(const GameSpec& spec);

/// Minimax value of a board given as 9 chars of "_OX" (+1 O wins, -1 X wins),
/// with the same termination rules as the generator.
[[nodiscard]] int tictactoe_value(const std::string& board);

} // namespace ruleinfer
