#include "ruleinfer/inference.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ruleinfer {

namespace {

enum Kind : std::uint8_t { pres = 0, del = 1, cre = 2 };

struct UVertex {
    Kind kind = pres;
    Label l{}, r{};
    bool changed = false;
    bool core = false;
};

struct UEdge {
    Kind kind = pres;
    std::uint32_t a = 0, b = 0;
    bool directed = false;
    Label l{}, r{};
    bool changed = false;
};

// A rule seen as one graph: L and R glued along the element map.
struct UnionView {
    std::vector<UVertex> v;
    std::vector<UEdge> e;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj; // (neighbor, edge)
    std::vector<std::uint32_t> core;
};

UnionView view_of(const Rule& p) {
    const GraphMap f = element_map(p);
    const GraphMap finv = invert(f, p.right);
    UnionView u;
    std::vector<std::uint32_t> of_right(p.right.vertex_count(), unmapped);
    for (VertexId a = 0; a < p.left.vertex_count(); ++a) {
        UVertex x;
        x.l = p.left.label(a);
        if (const VertexId b = f.vertices[a]; b != unmapped) {
            x.r = p.right.label(b);
            x.changed = x.l != x.r;
            of_right[b] = a;
        } else {
            x.kind = del;
            x.changed = true;
        }
        u.v.push_back(x);
    }
    for (VertexId b = 0; b < p.right.vertex_count(); ++b) {
        if (of_right[b] != unmapped) continue;
        of_right[b] = static_cast<std::uint32_t>(u.v.size());
        u.v.push_back(UVertex{cre, Label{0}, p.right.label(b), true, false});
    }
    for (EdgeId e = 0; e < p.left.edge_count(); ++e) {
        const Edge& ed = p.left.edge(e);
        UEdge x{pres, ed.source, ed.target, ed.directed, ed.label, Label{0}, false};
        if (f.edges[e] == unmapped) {
            x.kind = del;
            x.changed = true;
        } else {
            x.r = p.right.edge(f.edges[e]).label;
            x.changed = x.l != x.r;
        }
        u.e.push_back(x);
    }
    for (EdgeId e = 0; e < p.right.edge_count(); ++e) {
        if (finv.edges[e] != unmapped) continue;
        const Edge& ed = p.right.edge(e);
        u.e.push_back(UEdge{cre, of_right[ed.source], of_right[ed.target], ed.directed, Label{0}, ed.label, true});
    }
    u.adj.assign(u.v.size(), {});
    for (std::uint32_t i = 0; i < u.e.size(); ++i) {
        u.adj[u.e[i].a].emplace_back(u.e[i].b, i);
        u.adj[u.e[i].b].emplace_back(u.e[i].a, i);
        if (u.e[i].changed) u.v[u.e[i].a].core = u.v[u.e[i].b].core = true;
    }
    for (std::uint32_t i = 0; i < u.v.size(); ++i) {
        if (u.v[i].changed) u.v[i].core = true;
        if (u.v[i].core) u.core.push_back(i);
    }
    return u;
}

// Token of an edge seen from `from`, for comparing changed structure.
std::tuple<int, int, std::uint32_t, std::uint32_t> edge_sig(const UEdge& e, std::uint32_t from) {
    const int orient = e.directed ? (e.a == from ? 1 : 2) : 0;
    return {e.kind, orient, e.l.id, e.r.id};
}

class CommonSearch {
public:
    CommonSearch(const Rule& p1, const Rule& p2, const LabelPoset& poset, const InferenceConfig& cfg)
        : u1_(view_of(p1)), u2_(view_of(p2)), poset_(poset), cfg_(cfg) {}

    std::vector<Rule> run() {
        if (u1_.core.size() != u2_.core.size()) return {};
        m12_.assign(u1_.v.size(), unmapped);
        m21_.assign(u2_.v.size(), unmapped);
        align(0);
        std::vector<Rule> out;
        out.reserve(found_.size());
        for (auto& [code, rule] : found_) out.push_back(std::move(rule));
        return out;
    }

private:
    std::optional<Label> compat(Label a, Label b, bool vertex) const {
        if (a == b) return a;
        if (cfg_.epsilon == EpsilonPolicy::all || (cfg_.epsilon == EpsilonPolicy::vertices && vertex)) {
            return poset_.meet(a, b);
        }
        return std::nullopt;
    }

    std::vector<std::tuple<int, int, std::uint32_t, std::uint32_t>> changed_between(const UnionView& u, std::uint32_t x,
                                                                                   std::uint32_t y) const {
        std::vector<std::tuple<int, int, std::uint32_t, std::uint32_t>> out;
        for (auto [w, e] : u.adj[x]) {
            if (w == y && u.e[e].changed) out.push_back(edge_sig(u.e[e], x));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void budget() {
        if (++nodes_ > cfg_.max_search_nodes) {
            throw InferenceError("common subrule search exceeded its node budget");
        }
    }

    // Bijections between the two cores preserving changed structure.
    void align(std::size_t i) {
        budget();
        if (i == u1_.core.size()) {
            extend({});
            return;
        }
        const std::uint32_t a = u1_.core[i];
        const UVertex& va = u1_.v[a];
        for (std::uint32_t b : u2_.core) {
            if (m21_[b] != unmapped) continue;
            const UVertex& vb = u2_.v[b];
            if (va.kind != vb.kind || va.changed != vb.changed) continue;
            if (va.changed ? (va.l != vb.l || va.r != vb.r) : !compat(va.l, vb.l, true)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                const std::uint32_t c = u1_.core[j];
                ok = changed_between(u1_, a, c) == changed_between(u2_, b, m12_[c]);
            }
            if (!ok) continue;
            m12_[a] = b;
            m21_[b] = a;
            mapped_.push_back(a);
            align(i + 1);
            mapped_.pop_back();
            m12_[a] = unmapped;
            m21_[b] = unmapped;
        }
    }

    using Pair = std::pair<std::uint32_t, std::uint32_t>;

    // Pairs of unmapped context vertices that may join the mapping.
    std::vector<Pair> frontier() const {
        std::set<Pair> out;
        auto vertex_ok = [&](std::uint32_t a, std::uint32_t b) {
            return !u1_.v[a].core && !u2_.v[b].core && m12_[a] == unmapped && m21_[b] == unmapped &&
                   compat(u1_.v[a].l, u2_.v[b].l, true);
        };
        if (!cfg_.connected) {
            for (std::uint32_t a = 0; a < u1_.v.size(); ++a) {
                for (std::uint32_t b = 0; b < u2_.v.size(); ++b) {
                    if (vertex_ok(a, b)) out.emplace(a, b);
                }
            }
            return {out.begin(), out.end()};
        }
        for (std::uint32_t x : mapped_) {
            const std::uint32_t y = m12_[x];
            for (auto [a, e1] : u1_.adj[x]) {
                if (u1_.v[a].core || m12_[a] != unmapped) continue;
                const UEdge& ea = u1_.e[e1];
                for (auto [b, e2] : u2_.adj[y]) {
                    const UEdge& eb = u2_.e[e2];
                    if (ea.directed != eb.directed) continue;
                    if (ea.directed && ((ea.a == x) != (eb.a == y))) continue;
                    if (!compat(ea.l, eb.l, false)) continue;
                    if (vertex_ok(a, b)) out.emplace(a, b);
                }
            }
        }
        return {out.begin(), out.end()};
    }

    void extend(std::vector<Pair> excluded) {
        budget();
        const std::vector<Pair> f = frontier();
        std::vector<Pair> todo;
        for (const Pair& p : f) {
            if (std::find(excluded.begin(), excluded.end(), p) == excluded.end()) todo.push_back(p);
        }
        if (todo.empty()) {
            if (f.empty()) emit();
            return;
        }
        for (const Pair& p : todo) {
            m12_[p.first] = p.second;
            m21_[p.second] = p.first;
            mapped_.push_back(p.first);
            extend(excluded);
            mapped_.pop_back();
            m12_[p.first] = unmapped;
            m21_[p.second] = unmapped;
            excluded.push_back(p);
        }
    }

    void emit() {
        std::vector<std::uint32_t> verts = mapped_;
        std::sort(verts.begin(), verts.end());
        Graph left, right;
        std::vector<VertexId> lv(u1_.v.size(), unmapped), rv(u1_.v.size(), unmapped);
        for (std::uint32_t a : verts) {
            const UVertex& x = u1_.v[a];
            Label l = x.l, r = x.r;
            if (!x.changed) l = r = *compat(x.l, u2_.v[m12_[a]].l, true);
            if (x.kind != cre) lv[a] = left.add_vertex(l);
            if (x.kind != del) rv[a] = right.add_vertex(r);
        }
        GraphMap f = GraphMap::empty_for(left);
        for (std::uint32_t a : verts) {
            if (lv[a] != unmapped && rv[a] != unmapped) f.vertices[lv[a]] = rv[a];
        }
        std::vector<std::pair<EdgeId, EdgeId>> kept;
        for (const UEdge& e : u1_.e) {
            if (m12_[e.a] == unmapped || m12_[e.b] == unmapped) continue;
            Label l = e.l, r = e.r;
            if (!e.changed) {
                // Needs an unchanged counterpart in the second rule.
                std::optional<Label> lab;
                const std::uint32_t x = m12_[e.a], y = m12_[e.b];
                for (auto [w, i] : u2_.adj[x]) {
                    const UEdge& o = u2_.e[i];
                    if (w != y || o.changed || o.directed != e.directed) continue;
                    if (e.directed && o.a != x) continue;
                    lab = compat(e.l, o.l, false);
                    if (lab) break;
                }
                if (!lab) continue;
                l = r = *lab;
            }
            if (e.kind == del) {
                left.add_edge(lv[e.a], lv[e.b], l, e.directed);
            } else if (e.kind == cre) {
                right.add_edge(rv[e.a], rv[e.b], r, e.directed);
            } else {
                const EdgeId le = left.add_edge(lv[e.a], lv[e.b], l, e.directed);
                const EdgeId re = right.add_edge(rv[e.a], rv[e.b], r, e.directed);
                kept.emplace_back(le, re);
            }
        }
        f.edges.assign(left.edge_count(), unmapped);
        for (auto [le, re] : kept) f.edges[le] = re;
        Rule q = canonical_rule(rule_from_map(left, right, f, poset_), poset_);
        CanonicalCode code = rule_code(q);
        found_.emplace(std::move(code), std::move(q));
    }

    UnionView u1_, u2_;
    const LabelPoset& poset_;
    const InferenceConfig& cfg_;
    std::vector<std::uint32_t> m12_, m21_;
    std::vector<std::uint32_t> mapped_;
    std::map<CanonicalCode, Rule> found_;
    std::size_t nodes_ = 0;
};

std::size_t rule_size(const Rule& p) {
    return p.left.vertex_count() + p.left.edge_count() + p.right.vertex_count() + p.right.edge_count();
}

} // namespace

Coverage coverage(const Rule& p, const SystemIndex& index) {
    const std::size_t n = index.system().transitions().size();
    Coverage c(n);
    const SpanInfo info = SpanInfo::of(p);
    for (std::size_t t = 0; t < n; ++t) {
        if (find_generation(info, index.span(t), index.system().poset())) c.set(t);
    }
    return c;
}

std::vector<Rule> common_subrules(const Rule& p1, const Rule& p2, const LabelPoset& poset,
                                  const InferenceConfig& config) {
    std::vector<Rule> found = CommonSearch(p1, p2, poset, config).run();
    if (found.size() < 2) return found;
    // Keep the maximal ones among those found.
    std::vector<char> dominated(found.size(), 0);
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (std::size_t j = 0; j < found.size() && !dominated[i]; ++j) {
            if (i == j || dominated[j] || rule_size(found[i]) > rule_size(found[j])) continue;
            if (rule_size(found[i]) == rule_size(found[j]) && j > i) continue;
            if (is_subrule(found[i], found[j], poset)) dominated[i] = 1;
        }
    }
    std::vector<Rule> out;
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (!dominated[i]) out.push_back(std::move(found[i]));
    }
    return out;
}

CandidatePool build_candidate_pool(const SystemIndex& index, const InferenceConfig& config) {
    const TransitionSystem& sys = index.system();
    const LabelPoset& poset = sys.poset();
    const std::size_t n = sys.transitions().size();
    CandidatePool pool;
    pool.universe = n;

    std::vector<Rule> maximum(n);
    std::map<CanonicalCode, std::vector<std::size_t>> groups;
    std::map<CanonicalCode, Rule> group_core;
    for (std::size_t t = 0; t < n; ++t) {
        maximum[t] = canonical_rule(maximum_rule(sys.transition(t), poset), poset);
        Rule core = canonical_rule(minimal_subrule(maximum[t], poset), poset);
        CanonicalCode code = rule_code(core);
        groups[code].push_back(t);
        group_core.emplace(code, std::move(core));
    }

    std::vector<CandidateRule> all;        // every kept or dropped candidate
    std::vector<char> alive;
    std::vector<std::size_t> depth;
    std::unordered_set<CanonicalCode> seen;
    std::map<std::vector<Coverage::block_type>, std::vector<std::size_t>> classes;

    for (const auto& [core_code, members] : groups) {
        // `known` holds transitions already implied: a subrule covers everything
        // its superrules cover.
        auto group_coverage = [&](const Rule& p, const Coverage* known) {
            Coverage c = known ? *known : Coverage(n);
            const SpanInfo info = SpanInfo::of(p);
            for (std::size_t t : members) {
                if (!c.test(t) && find_generation(info, index.span(t), poset)) c.set(t);
            }
            return c;
        };
        std::deque<std::size_t> queue;
        auto offer = [&](Rule r, std::vector<std::size_t> provenance, std::size_t d, const Coverage* known) {
            CanonicalCode code = rule_code(r);
            if (!seen.insert(code).second) return;
            Coverage cov = group_coverage(r, known);
            if (cov.none()) return;
            std::vector<Coverage::block_type> key;
            boost::to_block_range(cov, std::back_inserter(key));
            auto& cls = classes[key];
            for (std::size_t m : cls) {
                if (alive[m] && is_subrule(r, all[m].rule, poset)) return; // dominated within its class
            }
            for (std::size_t m : cls) {
                if (alive[m] && is_subrule(all[m].rule, r, poset)) alive[m] = 0;
            }
            std::sort(provenance.begin(), provenance.end());
            provenance.erase(std::unique(provenance.begin(), provenance.end()), provenance.end());
            all.push_back(CandidateRule{std::move(r), std::move(code), std::move(cov), {}, false, std::move(provenance)});
            alive.push_back(1);
            depth.push_back(d);
            cls.push_back(all.size() - 1);
            queue.push_back(all.size() - 1);
            if (all.size() > config.max_candidates) {
                throw InferenceError("candidate pool exceeded its size limit (" + std::to_string(all.size()) +
                                     " rules explored)");
            }
        };
        for (std::size_t t : members) offer(maximum[t], {t}, 0, nullptr);
        const Rule& core = group_core.at(core_code);
        if (config.seed_minimal) {
            bool eps_outside_k = false;
            for (VertexId v = 0; v < core.left.vertex_count(); ++v) {
                eps_outside_k |= core.left.label(v) == poset.bottom();
            }
            for (VertexId v = 0; v < core.right.vertex_count(); ++v) {
                eps_outside_k |= core.right.label(v) == poset.bottom();
            }
            if (!eps_outside_k || config.epsilon != EpsilonPolicy::off) offer(core, members, 0, nullptr);
        }
        std::size_t steps = 0;
        while (!queue.empty()) {
            const std::size_t qi = queue.front();
            queue.pop_front();
            if (!alive[qi] || depth[qi] >= config.max_depth) continue;
            if (!config.expand_spurious) {
                CandidateRule& c = all[qi];
                if (!c.spurious_complete && c.spurious.empty()) {
                    c.spurious = spurious_codes(c.rule, index, true);
                    c.spurious_complete = c.spurious.empty();
                }
                if (!c.spurious.empty()) continue;
            }
            for (std::size_t t : members) {
                if (!alive[qi]) break;
                if (all[qi].coverage.test(t)) continue;
                // Copy: `all` may reallocate inside offer.
                const Rule q = all[qi].rule;
                std::vector<std::size_t> prov = all[qi].provenance;
                prov.push_back(t);
                Coverage known = all[qi].coverage;
                known.set(t);
                for (Rule& r : common_subrules(q, maximum[t], poset, config)) {
                    offer(std::move(r), prov, depth[qi] + 1, &known);
                }
            }
            if (config.progress && (++steps % 64) == 0) config.progress(all.size(), queue.size());
        }
    }
    pool.explored = seen.size();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (alive[i]) pool.candidates.push_back(std::move(all[i]));
    }
    // Deterministic order: by code.
    std::sort(pool.candidates.begin(), pool.candidates.end(),
              [](const CandidateRule& a, const CandidateRule& b) { return a.code < b.code; });
    return pool;
}

void compute_spurious(CandidatePool& pool, const SystemIndex& index, bool first_only) {
    for (CandidateRule& c : pool.candidates) {
        if (c.spurious_complete || (first_only && !c.spurious.empty())) continue;
        c.spurious = spurious_codes(c.rule, index, first_only);
        c.spurious_complete = !first_only || c.spurious.empty();
    }
}

CandidatePool exact_filter(const CandidatePool& pool) {
    CandidatePool out;
    out.universe = pool.universe;
    out.explored = pool.explored;
    for (const CandidateRule& c : pool.candidates) {
        if (c.spurious.empty()) out.candidates.push_back(c);
    }
    return out;
}

std::string format_pool(const CandidatePool& pool) {
    std::ostringstream os;
    os << "# candidates " << pool.candidates.size() << " universe " << pool.universe << "\n";
    os << "# id covered spurious coverage-bits code\n";
    for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
        const CandidateRule& c = pool.candidates[i];
        std::string bits;
        for (std::size_t t = 0; t < pool.universe; ++t) bits.push_back(c.coverage.test(t) ? '1' : '0');
        os << i << ' ' << c.coverage.count() << ' ' << (c.spurious_complete ? "" : ">=") << c.spurious.size() << ' '
           << bits << ' ' << to_hex(c.code) << "\n";
    }
    return os.str();
}

std::string hasse_dot(const CandidatePool& pool, const LabelPoset& poset) {
    const std::size_t n = pool.candidates.size();
    std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && is_subrule(pool.candidates[i].rule, pool.candidates[j].rule, poset)) below[i][j] = 1;
        }
    }
    std::ostringstream os;
    os << "digraph subrules {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < n; ++i) {
        os << "  r" << i << " [label=\"" << i << " |c|=" << pool.candidates[i].coverage.count() << "\"];\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!below[i][j]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < n && cover; ++k) cover = !(below[i][k] && below[k][j]);
            if (cover) os << "  r" << i << " -> r" << j << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace ruleinfer
