#include "ruleinfer/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace ruleinfer {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw CoverError("zero denominator");
    if (num < 0 || den < 0) throw CoverError("weights must be nonnegative");
    const std::int64_t g = std::gcd(num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
}

Rational Rational::parse(const std::string& text) {
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        }
        if (auto dot = text.find('.'); dot != std::string::npos) {
            const std::string frac = text.substr(dot + 1);
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            const std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
            const std::int64_t part = frac.empty() ? 0 : std::stoll(frac);
            return Rational(whole * den + part, den);
        }
        std::size_t used = 0;
        const std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw CoverError("trailing characters");
        return Rational(v);
    } catch (const std::logic_error&) {
        throw CoverError("not a rational number: " + text);
    }
}

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t CoverProblem::rule_cost() const {
    return mode == CoverMode::lossy ? rho.num() * spurious_weight.den() : 1;
}
std::int64_t CoverProblem::spurious_cost() const {
    return mode == CoverMode::lossy ? spurious_weight.num() * rho.den() : 0;
}
std::int64_t CoverProblem::scale() const { return mode == CoverMode::lossy ? rho.den() * spurious_weight.den() : 1; }

CoverProblem build_cover_problem(const CandidatePool& pool, CoverMode mode, Rational rho, Rational spurious_weight) {
    CoverProblem p;
    p.mode = mode;
    p.rho = rho;
    p.spurious_weight = spurious_weight;
    p.universe = pool.universe;
    std::map<CanonicalCode, std::uint32_t> spur_ids;
    for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
        const CandidateRule& c = pool.candidates[i];
        if (mode == CoverMode::exact && !c.spurious.empty()) continue;
        if (mode == CoverMode::lossy && !c.spurious_complete) {
            throw CoverError("lossy mode needs complete spurious sets");
        }
        p.sets.push_back(c.coverage);
        p.codes.push_back(c.code);
        p.origin.push_back(i);
        std::vector<std::uint32_t> ids;
        if (mode == CoverMode::lossy) {
            for (const CanonicalCode& s : c.spurious) {
                auto [it, fresh] = spur_ids.emplace(s, static_cast<std::uint32_t>(spur_ids.size()));
                ids.push_back(it->second);
            }
            std::sort(ids.begin(), ids.end());
        }
        p.spurious.push_back(std::move(ids));
    }
    p.spurious_total = spur_ids.size();
    Coverage all(p.universe);
    for (const Coverage& s : p.sets) all |= s;
    if (all.count() != p.universe) {
        std::size_t first = 0;
        while (all.test(first)) ++first;
        throw CoverError("transition " + std::to_string(first) + " is not covered by any candidate" +
                         (mode == CoverMode::exact ? " without spurious transitions" : ""));
    }
    return p;
}

Solution evaluate(const CoverProblem& problem, std::vector<std::size_t> chosen) {
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    Coverage c(problem.universe);
    std::vector<std::uint32_t> spur;
    for (std::size_t s : chosen) {
        c |= problem.sets.at(s);
        spur.insert(spur.end(), problem.spurious[s].begin(), problem.spurious[s].end());
    }
    if (c.count() != problem.universe) throw CoverError("selection does not cover the universe");
    std::sort(spur.begin(), spur.end());
    spur.erase(std::unique(spur.begin(), spur.end()), spur.end());
    Solution s;
    s.chosen = std::move(chosen);
    if (problem.mode != CoverMode::lossy) spur.clear();
    s.spurious_incurred = std::move(spur);
    const std::int64_t cost = problem.rule_cost() * static_cast<std::int64_t>(s.chosen.size()) +
                              problem.spurious_cost() * static_cast<std::int64_t>(s.spurious_incurred.size());
    s.objective = Rational(cost, problem.scale());
    return s;
}

namespace {

// Working instance over a subset of elements and sets.
struct Instance {
    std::size_t elements = 0;
    std::vector<std::vector<std::uint32_t>> set_elems;
    std::vector<std::vector<std::uint32_t>> set_spur;
    std::vector<std::size_t> set_origin;
    std::int64_t rule_cost = 1;
    std::int64_t spur_cost = 0;
    std::size_t spur_ids = 0;
};

struct Clock {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    bool expired = false;
    std::size_t ticks = 0;
    bool check() {
        if (expired) return true;
        if (deadline && (ticks++ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline) expired = true;
        return expired;
    }
};

// Greedy: best ratio of newly covered elements to marginal cost.
std::vector<std::uint32_t> greedy(const Instance& in) {
    std::vector<char> covered(in.elements, 0);
    std::vector<char> incurred(in.spur_ids, 0);
    std::size_t left = in.elements;
    std::vector<std::uint32_t> chosen;
    while (left > 0) {
        std::int64_t best_gain = 0, best_cost = 1;
        std::uint32_t best = UINT32_MAX;
        for (std::uint32_t s = 0; s < in.set_elems.size(); ++s) {
            std::int64_t gain = 0;
            for (auto e : in.set_elems[s]) gain += !covered[e];
            if (gain == 0) continue;
            std::int64_t extra = 0;
            for (auto z : in.set_spur[s]) extra += !incurred[z];
            const std::int64_t cost = in.rule_cost + in.spur_cost * extra;
            // gain/cost > best_gain/best_cost; zero cost beats everything.
            bool better;
            if (best == UINT32_MAX) better = true;
            else if (cost == 0 || best_cost == 0) better = cost == 0 && (best_cost != 0 || gain > best_gain);
            else better = static_cast<__int128>(gain) * best_cost > static_cast<__int128>(best_gain) * cost;
            if (better) {
                best = s;
                best_gain = gain;
                best_cost = cost;
            }
        }
        if (best == UINT32_MAX) throw CoverError("greedy cover failed");
        chosen.push_back(best);
        for (auto e : in.set_elems[best]) {
            if (!covered[e]) --left;
            covered[e] = 1;
        }
        for (auto z : in.set_spur[best]) incurred[z] = 1;
    }
    // Drop sets made redundant by later picks, latest first.
    std::vector<int> count(in.elements, 0);
    for (auto s : chosen)
        for (auto e : in.set_elems[s]) ++count[e];
    for (std::size_t i = chosen.size(); i-- > 0;) {
        const auto s = chosen[i];
        const bool redundant = std::all_of(in.set_elems[s].begin(), in.set_elems[s].end(),
                                           [&](auto e) { return count[e] > 1; });
        if (!redundant) continue;
        for (auto e : in.set_elems[s]) --count[e];
        chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return chosen;
}

std::int64_t cost_of(const Instance& in, const std::vector<std::uint32_t>& chosen) {
    std::vector<char> incurred(in.spur_ids, 0);
    std::int64_t c = 0;
    for (auto s : chosen) {
        c += in.rule_cost;
        for (auto z : in.set_spur[s]) {
            if (!incurred[z]) c += in.spur_cost;
            incurred[z] = 1;
        }
    }
    return c;
}

class BranchAndBound {
public:
    BranchAndBound(const Instance& in, Clock& clock) : in_(in), clock_(clock) {
        elem_sets_.assign(in.elements, {});
        for (std::uint32_t s = 0; s < in.set_elems.size(); ++s)
            for (auto e : in.set_elems[s]) elem_sets_[e].push_back(s);
    }

    std::vector<std::uint32_t> solve(std::vector<std::uint32_t> incumbent, bool& proved, std::size_t& nodes) {
        best_ = incumbent;
        best_cost_ = cost_of(in_, incumbent);
        covered_.assign(in_.elements, 0);
        cover_count_.assign(in_.elements, 0);
        forbidden_.assign(in_.set_elems.size(), 0);
        spur_count_.assign(in_.spur_ids, 0);
        uncovered_ = in_.elements;
        dfs(0);
        proved = !clock_.expired;
        nodes = nodes_;
        return best_;
    }

private:
    std::int64_t lower_bound() {
        // Elements no two of which share an allowed set each need their own set.
        std::vector<std::uint32_t> order;
        for (std::uint32_t e = 0; e < in_.elements; ++e)
            if (!covered_[e]) order.push_back(e);
        std::vector<std::size_t> avail(in_.elements, 0);
        for (auto e : order)
            for (auto s : elem_sets_[e]) avail[e] += !forbidden_[s];
        std::sort(order.begin(), order.end(), [&](auto a, auto b) {
            return avail[a] != avail[b] ? avail[a] < avail[b] : a < b;
        });
        marks_.assign(in_.set_elems.size(), 0);
        std::int64_t packed = 0;
        std::size_t max_gain = 0;
        for (auto e : order) {
            bool free = true;
            for (auto s : elem_sets_[e]) {
                if (!forbidden_[s] && marks_[s]) {
                    free = false;
                    break;
                }
            }
            if (!free) continue;
            ++packed;
            for (auto s : elem_sets_[e]) marks_[s] = 1;
        }
        gain_.assign(in_.set_elems.size(), 0);
        for (std::uint32_t s = 0; s < in_.set_elems.size(); ++s) {
            if (forbidden_[s]) continue;
            std::size_t g = 0;
            for (auto e : in_.set_elems[s]) g += !covered_[e];
            gain_[s] = g;
            max_gain = std::max(max_gain, g);
        }
        if (max_gain == 0) return uncovered_ ? INT64_MAX / 4 : 0;
        const auto by_size = static_cast<std::int64_t>((uncovered_ + max_gain - 1) / max_gain);
        // Dual bound: y_e = 1 / (largest set that could cover e) is feasible.
        double frac = 0;
        for (auto e : order) {
            std::size_t m = 0;
            for (auto s : elem_sets_[e]) m = std::max(m, gain_[s]);
            if (m == 0) return INT64_MAX / 4;
            frac += 1.0 / static_cast<double>(m);
        }
        packed = std::max(packed, static_cast<std::int64_t>(std::ceil(frac - 1e-9)));
        return std::max(packed, by_size) * in_.rule_cost;
    }

    void take(std::uint32_t s, int dir) {
        for (auto e : in_.set_elems[s]) {
            if (dir > 0) {
                if (cover_count_[e]++ == 0) {
                    covered_[e] = 1;
                    --uncovered_;
                }
            } else if (--cover_count_[e] == 0) {
                covered_[e] = 0;
                ++uncovered_;
            }
        }
    }

    std::int64_t add_spur(std::uint32_t s, int dir) {
        std::int64_t extra = 0;
        for (auto z : in_.set_spur[s]) {
            if (dir > 0) extra += spur_count_[z]++ == 0;
            else extra += --spur_count_[z] == 0;
        }
        return extra * in_.spur_cost;
    }

    void dfs(std::int64_t cost) {
        ++nodes_;
        if (clock_.check()) return;
        if (uncovered_ == 0) {
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_ = chosen_;
            }
            return;
        }
        const std::int64_t lb = lower_bound();
        if (cost + lb >= best_cost_) return;
        // Branch on the uncovered element with the fewest allowed sets.
        std::uint32_t pick = UINT32_MAX;
        std::size_t fewest = SIZE_MAX;
        for (std::uint32_t e = 0; e < in_.elements; ++e) {
            if (covered_[e]) continue;
            std::size_t n = 0;
            for (auto s : elem_sets_[e]) n += !forbidden_[s];
            if (n < fewest) {
                fewest = n;
                pick = e;
            }
        }
        if (fewest == 0) return;
        std::vector<std::pair<std::size_t, std::uint32_t>> options;
        for (auto s : elem_sets_[pick]) {
            if (forbidden_[s]) continue;
            std::size_t g = 0;
            for (auto e : in_.set_elems[s]) g += !covered_[e];
            options.emplace_back(g, s);
        }
        std::sort(options.begin(), options.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::vector<std::uint32_t> banned;
        for (auto [g, s] : options) {
            take(s, +1);
            const std::int64_t extra = add_spur(s, +1);
            chosen_.push_back(s);
            dfs(cost + in_.rule_cost + extra);
            chosen_.pop_back();
            add_spur(s, -1);
            take(s, -1);
            forbidden_[s] = 1;
            banned.push_back(s);
            if (clock_.expired) break;
        }
        for (auto s : banned) forbidden_[s] = 0;
    }

    const Instance& in_;
    Clock& clock_;
    std::vector<std::vector<std::uint32_t>> elem_sets_;
    std::vector<std::uint32_t> best_;
    std::int64_t best_cost_ = INT64_MAX;
    std::vector<char> covered_;
    std::vector<int> cover_count_;
    std::vector<char> forbidden_;
    std::vector<char> marks_;
    std::vector<std::size_t> gain_;
    std::vector<int> spur_count_;
    std::vector<std::uint32_t> chosen_;
    std::size_t uncovered_ = 0;
    std::size_t nodes_ = 0;
};

Instance full_instance(const CoverProblem& p) {
    Instance in;
    in.elements = p.universe;
    in.rule_cost = p.rule_cost();
    in.spur_cost = p.spurious_cost();
    in.spur_ids = p.mode == CoverMode::lossy ? p.spurious_total : 0;
    if (p.mode == CoverMode::lossy) {
        // Secondary key: among equal objectives prefer fewer spurious transitions.
        const auto m = static_cast<std::int64_t>(p.spurious_total) + 1;
        in.rule_cost *= m;
        in.spur_cost = in.spur_cost * m + 1;
    }
    for (std::size_t s = 0; s < p.sets.size(); ++s) {
        std::vector<std::uint32_t> el;
        for (auto e = p.sets[s].find_first(); e != Coverage::npos; e = p.sets[s].find_next(e))
            el.push_back(static_cast<std::uint32_t>(e));
        in.set_elems.push_back(std::move(el));
        in.set_spur.push_back(p.mode == CoverMode::lossy ? p.spurious[s] : std::vector<std::uint32_t>{});
        in.set_origin.push_back(s);
    }
    return in;
}

bool subset(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Reductions that keep at least one optimal solution: forced sets, dominated
// sets and dominated elements. Returns the forced sets (as instance ids).
std::vector<std::uint32_t> reduce(Instance& in) {
    std::vector<std::uint32_t> forced;
    std::vector<char> set_alive(in.set_elems.size(), 1);
    std::vector<char> elem_alive(in.elements, 1);
    std::vector<char> incurred(in.spur_ids, 0);
    bool changed = true;
    auto live_elems = [&](std::uint32_t s) {
        std::vector<std::uint32_t> out;
        for (auto e : in.set_elems[s])
            if (elem_alive[e]) out.push_back(e);
        return out;
    };
    auto live_spur = [&](std::uint32_t s) {
        std::vector<std::uint32_t> out;
        for (auto z : in.set_spur[s])
            if (!incurred[z]) out.push_back(z);
        return out;
    };
    while (changed) {
        changed = false;
        for (std::uint32_t s = 0; s < in.set_elems.size(); ++s) {
            in.set_elems[s] = live_elems(s);
            in.set_spur[s] = live_spur(s);
            if (set_alive[s] && in.set_elems[s].empty()) {
                set_alive[s] = 0;
                changed = true;
            }
        }
        std::vector<std::vector<std::uint32_t>> elem_sets(in.elements);
        for (std::uint32_t s = 0; s < in.set_elems.size(); ++s)
            if (set_alive[s])
                for (auto e : in.set_elems[s]) elem_sets[e].push_back(s);
        // Forced sets.
        for (std::uint32_t e = 0; e < in.elements; ++e) {
            if (!elem_alive[e] || elem_sets[e].size() != 1) continue;
            const auto s = elem_sets[e][0];
            if (!set_alive[s]) continue;
            forced.push_back(s);
            set_alive[s] = 0;
            for (auto x : in.set_elems[s]) elem_alive[x] = 0;
            for (auto z : in.set_spur[s]) incurred[z] = 1;
            changed = true;
        }
        if (changed) continue;
        // Dominated sets: fewer elements and no fewer fresh spurious ones.
        std::vector<std::uint32_t> live;
        for (std::uint32_t s = 0; s < in.set_elems.size(); ++s)
            if (set_alive[s]) live.push_back(s);
        for (auto a : live) {
            if (!set_alive[a]) continue;
            for (auto b : live) {
                if (a == b || !set_alive[b]) continue;
                if (in.set_elems[a].size() > in.set_elems[b].size()) continue;
                if (!subset(in.set_elems[a], in.set_elems[b]) || !subset(in.set_spur[b], in.set_spur[a])) continue;
                const bool same = in.set_elems[a].size() == in.set_elems[b].size() &&
                                  in.set_spur[a].size() == in.set_spur[b].size();
                if (same && a < b) continue; // keep the earlier of two equal sets
                set_alive[a] = 0;
                changed = true;
                break;
            }
        }
        if (changed) continue;
        // Dominated elements: covering e1 forces covering e2.
        for (std::uint32_t e1 = 0; e1 < in.elements; ++e1) {
            if (!elem_alive[e1]) continue;
            for (std::uint32_t e2 = 0; e2 < in.elements; ++e2) {
                if (e1 == e2 || !elem_alive[e2] || !elem_alive[e1]) continue;
                if (elem_sets[e1].size() > elem_sets[e2].size()) continue;
                if (!subset(elem_sets[e1], elem_sets[e2])) continue;
                if (elem_sets[e1].size() == elem_sets[e2].size() && e2 < e1) continue;
                elem_alive[e2] = 0;
                changed = true;
            }
        }
    }
    for (std::uint32_t s = 0; s < in.set_elems.size(); ++s)
        if (!set_alive[s]) in.set_elems[s].clear();
    for (std::uint32_t s = 0; s < in.set_spur.size(); ++s) {
        if (!set_alive[s]) in.set_spur[s].clear();
    }
    return forced;
}

// Splits the remaining instance into independent parts (shared elements or
// shared spurious transitions connect sets).
std::vector<Instance> components(const Instance& in) {
    const std::size_t ns = in.set_elems.size();
    std::vector<std::uint32_t> parent(ns);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    std::vector<std::uint32_t> elem_owner(in.elements, UINT32_MAX), spur_owner(in.spur_ids, UINT32_MAX);
    for (std::uint32_t s = 0; s < ns; ++s) {
        if (in.set_elems[s].empty()) continue;
        for (auto e : in.set_elems[s]) {
            if (elem_owner[e] == UINT32_MAX) elem_owner[e] = s;
            else unite(s, elem_owner[e]);
        }
        for (auto z : in.set_spur[s]) {
            if (spur_owner[z] == UINT32_MAX) spur_owner[z] = s;
            else unite(s, spur_owner[z]);
        }
    }
    std::map<std::uint32_t, Instance> parts;
    std::map<std::uint32_t, std::map<std::uint32_t, std::uint32_t>> elem_ids, spur_ids;
    for (std::uint32_t s = 0; s < ns; ++s) {
        if (in.set_elems[s].empty()) continue;
        const auto root = find(s);
        Instance& part = parts[root];
        part.rule_cost = in.rule_cost;
        part.spur_cost = in.spur_cost;
        auto& em = elem_ids[root];
        auto& zm = spur_ids[root];
        std::vector<std::uint32_t> el, sp;
        for (auto e : in.set_elems[s]) el.push_back(em.emplace(e, em.size()).first->second);
        for (auto z : in.set_spur[s]) sp.push_back(zm.emplace(z, zm.size()).first->second);
        std::sort(el.begin(), el.end());
        std::sort(sp.begin(), sp.end());
        part.set_elems.push_back(std::move(el));
        part.set_spur.push_back(std::move(sp));
        part.set_origin.push_back(in.set_origin[s]);
    }
    std::vector<Instance> out;
    for (auto& [root, part] : parts) {
        part.elements = elem_ids[root].size();
        part.spur_ids = spur_ids[root].size();
        out.push_back(std::move(part));
    }
    return out;
}

} // namespace

Solution solve_greedy(const CoverProblem& problem) {
    const Instance in = full_instance(problem);
    std::vector<std::size_t> chosen;
    for (auto s : greedy(in)) chosen.push_back(in.set_origin[s]);
    Solution sol = evaluate(problem, chosen);
    sol.optimal = false;
    return sol;
}

Solution solve_exact(const CoverProblem& problem, const SolveOptions& options) {
    Instance in = full_instance(problem);
    Clock clock;
    if (options.timeout) {
        clock.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(*options.timeout);
    }
    std::vector<std::size_t> chosen;
    for (auto s : reduce(in)) chosen.push_back(in.set_origin[s]);
    bool proved_all = true;
    std::size_t nodes = 0;
    for (Instance& part : components(in)) {
        const auto incumbent = greedy(part);
        bool proved = false;
        std::size_t n = 0;
        BranchAndBound bnb(part, clock);
        for (auto s : bnb.solve(incumbent, proved, n)) chosen.push_back(part.set_origin[s]);
        proved_all = proved_all && proved;
        nodes += n;
    }
    Solution sol = evaluate(problem, chosen);
    sol.optimal = proved_all;
    sol.nodes = nodes;
    return sol;
}

std::string export_lp(const CoverProblem& p) {
    std::ostringstream os;
    const char* mode = p.mode == CoverMode::exact ? "exact" : p.mode == CoverMode::lossy ? "lossy" : "generating";
    os << "\\ rule selection as 0-1 covering program\n";
    os << "\\ mode " << mode << " rho " << p.rho.str() << " spurious_weight " << p.spurious_weight.str() << "\n";
    os << "\\ scale " << p.scale() << ": objective value = LP objective / scale\n";
    os << "\\ sets " << p.sets.size() << " universe " << p.universe << " spurious "
       << (p.mode == CoverMode::lossy ? p.spurious_total : 0) << "\n";
    auto terms = [&](std::ostringstream& out, const std::vector<std::string>& ts) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i > 0 && i % 8 == 0) out << "\n   ";
            out << (i == 0 ? " " : " + ") << ts[i];
        }
    };
    os << "Minimize\n obj:";
    std::vector<std::string> obj;
    for (std::size_t s = 0; s < p.sets.size(); ++s) obj.push_back(std::to_string(p.rule_cost()) + " x" + std::to_string(s));
    const bool lossy = p.mode == CoverMode::lossy && p.spurious_total > 0;
    if (lossy) {
        for (std::size_t z = 0; z < p.spurious_total; ++z)
            obj.push_back(std::to_string(p.spurious_cost()) + " z" + std::to_string(z));
    }
    terms(os, obj);
    os << "\nSubject To\n";
    for (std::size_t t = 0; t < p.universe; ++t) {
        std::vector<std::string> ts;
        for (std::size_t s = 0; s < p.sets.size(); ++s)
            if (p.sets[s].test(t)) ts.push_back("x" + std::to_string(s));
        os << " c" << t << ":";
        terms(os, ts);
        os << " >= 1\n";
    }
    if (lossy) {
        for (std::size_t s = 0; s < p.sets.size(); ++s) {
            for (auto z : p.spurious[s]) os << " l" << s << "_" << z << ": z" << z << " - x" << s << " >= 0\n";
        }
    }
    os << "Binary\n";
    for (std::size_t s = 0; s < p.sets.size(); ++s) os << " x" << s << "\n";
    if (lossy)
        for (std::size_t z = 0; z < p.spurious_total; ++z) os << " z" << z << "\n";
    os << "End\n";
    return os.str();
}

} // namespace ruleinfer
