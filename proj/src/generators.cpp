#include "ruleinfer/generators.hpp"

#include <array>
#include <map>
#include <set>

namespace ruleinfer {

namespace {

const std::string marker_start = "\xe2\x96\xb7"; // ▷
const std::string marker_end = "\xe2\x97\x81";   // ◁

struct Production {
    char lhs;
    std::string rhs;
};

const std::array<Production, 7> productions{{
    {'S', "AT"}, {'A', ""}, {'A', "AA"}, {'A', "0"}, {'A', "10"}, {'T', ""}, {'T', "T1"},
}};

struct Encoded {
    Graph graph;
    std::vector<VertexId> symbol; // string position -> vertex
    VertexId start = unmapped, end = unmapped;
};

Encoded encode_string(const std::string& s, GrammarEncoding enc, const LabelPoset& P) {
    Encoded e;
    const bool directed = enc != GrammarEncoding::undirected;
    const Label dash = P.label("-");
    if (enc == GrammarEncoding::marked) e.start = e.graph.add_vertex(P.label(marker_start));
    for (char c : s) e.symbol.push_back(e.graph.add_vertex(P.label(std::string(1, c))));
    if (enc == GrammarEncoding::marked) e.end = e.graph.add_vertex(P.label(marker_end));
    // Vertex order along the path.
    std::vector<VertexId> chain;
    if (e.start != unmapped) chain.push_back(e.start);
    chain.insert(chain.end(), e.symbol.begin(), e.symbol.end());
    if (e.end != unmapped) chain.push_back(e.end);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) e.graph.add_edge(chain[i], chain[i + 1], dash, directed);
    return e;
}

} // namespace

TransitionSystem gen_grammar(const GrammarSpec& spec) {
    auto P = LabelPoset::flat({"S", "A", "T", "0", "1", marker_start, marker_end, "-"});
    TransitionSystem sys(P);
    // Forward closure over forms of bounded length.
    std::set<std::string> forms{"S"};
    std::vector<std::string> todo{"S"};
    while (!todo.empty()) {
        const std::string s = todo.back();
        todo.pop_back();
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (const auto& pr : productions) {
                if (s[i] != pr.lhs) continue;
                std::string t = s.substr(0, i) + pr.rhs + s.substr(i + 1);
                if (t.size() <= spec.max_len && forms.insert(t).second) todo.push_back(t);
            }
        }
    }
    // Shortest first, then lexicographic.
    std::vector<std::string> ordered(forms.begin(), forms.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
    for (const std::string& s : ordered) {
        const auto src = encode_string(s, spec.encoding, P);
        const std::size_t index = sys.add_input(src.graph);
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t k = 0; k < productions.size(); ++k) {
                const auto& pr = productions[k];
                if (s[i] != pr.lhs) continue;
                const std::string t = s.substr(0, i) + pr.rhs + s.substr(i + 1);
                const auto dst = encode_string(t, spec.encoding, P);
                GraphMap f = GraphMap::empty_for(src.graph);
                // Unchanged symbols keep their identity; rhs symbols are fresh.
                for (std::size_t j = 0; j < s.size(); ++j) {
                    if (j < i) f.vertices[src.symbol[j]] = dst.symbol[j];
                    if (j > i) f.vertices[src.symbol[j]] = dst.symbol[j - 1 + pr.rhs.size()];
                }
                if (src.start != unmapped) {
                    f.vertices[src.start] = dst.start;
                    f.vertices[src.end] = dst.end;
                }
                for (EdgeId e = 0; e < src.graph.edge_count(); ++e) {
                    const Edge& ed = src.graph.edge(e);
                    const VertexId a = f.vertices[ed.source], b = f.vertices[ed.target];
                    if (a == unmapped || b == unmapped) continue;
                    if (auto x = dst.graph.find_edge(a, b, ed.directed)) f.edges[e] = *x;
                }
                const std::string name = s.empty() ? std::string("()") : s;
                sys.add_transition(index, std::move(f), dst.graph,
                                   name + " -> " + (t.empty() ? std::string("()") : t) + " [" + std::to_string(k + 1) +
                                       " @" + std::to_string(i) + "]");
            }
        }
    }
    return sys;
}

std::string grammar_string(const Graph& g, const LabelPoset& poset) {
    // Follow the path from its source (or from a degree-1 end when undirected).
    std::string out;
    if (g.empty()) return out;
    VertexId cur = unmapped;
    for (VertexId v = 0; v < g.vertex_count() && cur == unmapped; ++v) {
        bool has_in = false;
        for (EdgeId e : g.incident(v)) {
            const Edge& ed = g.edge(e);
            if (ed.directed ? ed.target == v : false) has_in = true;
        }
        if (!has_in && g.degree(v) <= 1) cur = v;
    }
    if (cur == unmapped) cur = 0;
    VertexId prev = unmapped;
    for (std::size_t steps = 0; steps < g.vertex_count() && cur != unmapped; ++steps) {
        const std::string& name = poset.name(g.label(cur));
        if (name != marker_start && name != marker_end) out += name;
        VertexId next = unmapped;
        for (EdgeId e : g.incident(cur)) {
            const Edge& ed = g.edge(e);
            const VertexId w = ed.other(cur);
            if (w == prev || (ed.directed && ed.source != cur)) continue;
            next = w;
        }
        prev = cur;
        cur = next;
    }
    return out;
}

namespace {

constexpr std::array<std::array<int, 3>, 8> lines{{
    {0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6},
}};

char winner(const std::string& b) {
    for (const auto& l : lines) {
        if (b[l[0]] != '_' && b[l[0]] == b[l[1]] && b[l[1]] == b[l[2]]) return b[l[0]];
    }
    return 0;
}

bool blocked(const std::string& b) {
    for (const auto& l : lines) {
        bool o = false, x = false;
        for (int i : l) {
            o |= b[i] == 'O';
            x |= b[i] == 'X';
        }
        if (!(o && x)) return false;
    }
    return true;
}

bool terminal(const std::string& b) {
    return winner(b) != 0 || b.find('_') == std::string::npos || blocked(b);
}

char to_move(const std::string& b) {
    return std::count(b.begin(), b.end(), 'O') == std::count(b.begin(), b.end(), 'X') ? 'O' : 'X';
}

class Minimax {
public:
    int value(const std::string& b) {
        if (auto it = memo_.find(b); it != memo_.end()) return it->second;
        int v = 0;
        if (const char w = winner(b)) {
            v = w == 'O' ? 1 : -1;
        } else if (!terminal(b)) {
            const char p = to_move(b);
            v = p == 'O' ? -2 : 2;
            for (int i = 0; i < 9; ++i) {
                if (b[i] != '_') continue;
                std::string nb = b;
                nb[i] = p;
                const int c = value(nb);
                v = p == 'O' ? std::max(v, c) : std::min(v, c);
            }
        }
        memo_.emplace(b, v);
        return v;
    }

private:
    std::map<std::string, int> memo_;
};

// The eight symmetries of the square as index permutations.
std::vector<std::array<int, 9>> board_symmetries() {
    std::vector<std::array<int, 9>> out;
    std::array<int, 9> p{};
    for (int i = 0; i < 9; ++i) p[i] = i;
    auto rot = [](int i) { return (i % 3) * 3 + (2 - i / 3); };
    auto refl = [](int i) { return (i / 3) * 3 + (2 - i % 3); };
    for (int k = 0; k < 4; ++k) {
        out.push_back(p);
        std::array<int, 9> q{};
        for (int i = 0; i < 9; ++i) q[i] = refl(p[i]);
        out.push_back(q);
        for (int i = 0; i < 9; ++i) p[i] = rot(p[i]);
    }
    return out;
}

std::string permute(const std::string& b, const std::array<int, 9>& q) {
    std::string out(9, '_');
    for (int i = 0; i < 9; ++i) out[i] = b[q[i]];
    return out;
}

} // namespace

int tictactoe_value(const std::string& board) {
    static thread_local Minimax mm;
    return mm.value(board);
}

TransitionSystem gen_tictactoe(const GameSpec& spec) {
    if (spec.player != 'O' && spec.player != 'X') throw std::invalid_argument("player must be O or X");
    const char me = spec.player;
    const char other = me == 'O' ? 'X' : 'O';
    const int lost = me == 'O' ? -1 : 1; // value meaning the opponent wins
    Minimax mm;
    auto loses = [&](const std::string& b) { return mm.value(b) == lost; };

    // Reachable states under the chosen play restriction.
    std::set<std::string> seen;
    std::vector<std::string> stack{std::string(9, '_')};
    std::set<std::string> states;
    while (!stack.empty()) {
        const std::string b = stack.back();
        stack.pop_back();
        if (!seen.insert(b).second || terminal(b)) continue;
        const char p = to_move(b);
        if (p == me && !loses(b)) states.insert(b);
        const bool restrict = spec.reach == Reachability::both || (spec.reach == Reachability::modeled && p == me);
        if (restrict && p == me && loses(b)) continue;
        for (int i = 0; i < 9; ++i) {
            if (b[i] != '_') continue;
            std::string nb = b;
            nb[i] = p;
            if (restrict) {
                const int v = mm.value(nb);
                if (v == (p == 'O' ? -1 : 1)) continue; // hands the opponent a win
            }
            stack.push_back(nb);
        }
    }

    const auto syms = board_symmetries();
    auto canonical = [&](const std::string& b, std::array<int, 9>* used) {
        std::string best;
        for (const auto& q : syms) {
            std::string c = permute(b, q);
            if (best.empty() || c < best) {
                best = c;
                if (used) *used = q;
            }
        }
        return best;
    };

    auto P = LabelPoset::flat({"_", "O", "X", "-"});
    TransitionSystem sys(P);
    auto board_graph = [&](const std::string& b) {
        Graph g;
        for (int i = 0; i < 9; ++i) g.add_vertex(P.label(std::string(1, b[i])));
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                if (c < 2) g.add_edge(r * 3 + c, r * 3 + c + 1, P.label("-"));
                if (r < 2) g.add_edge(r * 3 + c, (r + 1) * 3 + c, P.label("-"));
            }
        }
        return g;
    };
    std::map<std::string, std::size_t> input_of;
    for (const std::string& b : states) {
        const std::string c = canonical(b, nullptr);
        if (!input_of.count(c)) input_of.emplace(c, 0);
    }
    for (auto& [c, idx] : input_of) idx = sys.add_input(board_graph(c));
    for (const auto& [c, idx] : input_of) {
        const Graph g = board_graph(c);
        for (int i = 0; i < 9; ++i) {
            if (c[i] != '_') continue;
            std::string nb = c;
            nb[i] = me;
            if (loses(nb)) continue;
            sys.add_transition(idx, GraphMap::identity(g), board_graph(nb), c + " -> " + nb);
        }
    }
    (void)other;
    return sys;
}

} // namespace ruleinfer
