#include "ruleinfer/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace ruleinfer {

std::uint32_t ColoredGraph::add_vertex(std::uint64_t color) {
    colors.push_back(color);
    arcs.emplace_back();
    return static_cast<std::uint32_t>(colors.size() - 1);
}

void ColoredGraph::add_arc(std::uint32_t from, std::uint32_t to, std::uint64_t token) {
    arcs.at(from).emplace_back(to, token);
}

namespace {

using Words = std::vector<std::uint64_t>;

// Cell ids are the index of the cell's first slot in the ordered partition, so
// they are canonical whenever the partition is.
struct Partition {
    std::vector<std::uint32_t> cell; // vertex -> cell id
    std::size_t cells = 0;
};

class Canonizer {
public:
    explicit Canonizer(const ColoredGraph& g) : g_(g), n_(g.size()) {}

    CanonicalForm run() {
        CanonicalForm out;
        Partition p = initial();
        refine(p);
        std::vector<std::uint32_t> path;
        search(p, path);
        out.order = best_order_;
        out.code = serialize(best_);
        out.generators = std::move(generators_);
        return out;
    }

private:
    Partition initial() const {
        std::vector<std::uint32_t> idx(n_);
        std::iota(idx.begin(), idx.end(), 0u);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](auto a, auto b) { return g_.colors[a] < g_.colors[b]; });
        Partition p;
        p.cell.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == 0 || g_.colors[idx[i]] != g_.colors[idx[i - 1]]) {
                ++p.cells;
                p.cell[idx[i]] = static_cast<std::uint32_t>(i);
            } else {
                p.cell[idx[i]] = p.cell[idx[i - 1]];
            }
        }
        return p;
    }

    // Refine to the coarsest equitable partition below p.
    void refine(Partition& p) const {
        std::vector<Words> sig(n_);
        std::vector<std::uint32_t> idx(n_);
        while (true) {
            for (std::uint32_t v = 0; v < n_; ++v) {
                Words& s = sig[v];
                s.clear();
                s.push_back(p.cell[v]);
                std::vector<std::pair<std::uint64_t, std::uint64_t>> nb;
                nb.reserve(g_.arcs[v].size());
                for (auto [w, tok] : g_.arcs[v]) nb.emplace_back(p.cell[w], tok);
                std::sort(nb.begin(), nb.end());
                for (auto [c, t] : nb) {
                    s.push_back(c);
                    s.push_back(t);
                }
            }
            std::iota(idx.begin(), idx.end(), 0u);
            std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
                return sig[a] != sig[b] ? sig[a] < sig[b] : a < b;
            });
            Partition q;
            q.cell.assign(n_, 0);
            std::size_t cells = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (i == 0 || sig[idx[i]] != sig[idx[i - 1]]) {
                    ++cells;
                    q.cell[idx[i]] = static_cast<std::uint32_t>(i);
                } else {
                    q.cell[idx[i]] = q.cell[idx[i - 1]];
                }
            }
            q.cells = cells;
            const bool stable = q.cells == p.cells;
            p = std::move(q);
            if (stable) return;
        }
    }

    Words certificate(const Partition& p) const {
        // Discrete partition: cell id is the position.
        Words w;
        w.reserve(2 + 4 * n_);
        w.push_back(n_);
        std::vector<std::uint32_t> order(n_);
        for (std::uint32_t v = 0; v < n_; ++v) order[p.cell[v]] = v;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> nb;
        for (std::uint32_t pos = 0; pos < n_; ++pos) {
            const std::uint32_t v = order[pos];
            w.push_back(g_.colors[v]);
            w.push_back(g_.arcs[v].size());
            nb.clear();
            for (auto [x, tok] : g_.arcs[v]) nb.emplace_back(p.cell[x], tok);
            std::sort(nb.begin(), nb.end());
            for (auto [c, t] : nb) {
                w.push_back(c);
                w.push_back(t);
            }
        }
        return w;
    }

    // Returns the depth at which the search should resume (backjumping after
    // an automorphism has been found).
    std::size_t search(const Partition& p, std::vector<std::uint32_t>& path) {
        const std::size_t depth = path.size();
        if (p.cells == n_) {
            Words cert = certificate(p);
            std::vector<std::uint32_t> order(n_);
            for (std::uint32_t v = 0; v < n_; ++v) order[p.cell[v]] = v;
            if (!have_best_ || cert < best_) {
                best_ = std::move(cert);
                best_order_ = std::move(order);
                best_path_ = path;
                have_best_ = true;
                return depth;
            }
            if (cert == best_) {
                // best position -> current position gives an automorphism.
                std::vector<std::uint32_t> gamma(n_);
                for (std::uint32_t i = 0; i < n_; ++i) gamma[best_order_[i]] = order[i];
                generators_.push_back(std::move(gamma));
                std::size_t k = 0;
                while (k < path.size() && k < best_path_.size() && path[k] == best_path_[k]) ++k;
                return k;
            }
            return depth;
        }
        // Target cell: first smallest non-singleton cell.
        std::vector<std::uint32_t> sizes(n_, 0);
        for (std::uint32_t v = 0; v < n_; ++v) ++sizes[p.cell[v]];
        std::uint32_t target = 0;
        std::uint32_t target_size = 0;
        for (std::uint32_t c = 0; c < n_; ++c) {
            if (sizes[c] > 1 && (target_size == 0 || sizes[c] < target_size)) {
                target = c;
                target_size = sizes[c];
            }
        }
        std::vector<std::uint32_t> members;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (p.cell[v] == target) members.push_back(v);
        }
        std::vector<std::uint32_t> explored;
        for (std::uint32_t w : members) {
            if (!explored.empty() && same_orbit_as_explored(path, w, explored)) continue;
            explored.push_back(w);
            Partition q = p;
            for (std::uint32_t v = 0; v < n_; ++v) {
                if (q.cell[v] == target && v != w) q.cell[v] = target + 1;
            }
            ++q.cells;
            refine(q);
            path.push_back(w);
            const std::size_t r = search(q, path);
            path.pop_back();
            if (r < depth) return r;
        }
        return depth;
    }

    bool same_orbit_as_explored(const std::vector<std::uint32_t>& path, std::uint32_t w,
                                const std::vector<std::uint32_t>& explored) const {
        if (generators_.empty()) return false;
        std::vector<std::uint32_t> parent(n_);
        std::iota(parent.begin(), parent.end(), 0u);
        auto find = [&](std::uint32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        bool any = false;
        for (const auto& gamma : generators_) {
            const bool fixes = std::all_of(path.begin(), path.end(), [&](auto v) { return gamma[v] == v; });
            if (!fixes) continue;
            any = true;
            for (std::uint32_t v = 0; v < n_; ++v) {
                auto a = find(v);
                auto b = find(gamma[v]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        if (!any) return false;
        const auto rw = find(w);
        return std::any_of(explored.begin(), explored.end(), [&](auto e) { return find(e) == rw; });
    }

    static CanonicalCode serialize(const Words& w) {
        CanonicalCode out;
        out.reserve(w.size() * 4);
        // Variable-length encoding keeps codes short for small values.
        for (std::uint64_t x : w) {
            do {
                unsigned char byte = x & 0x7f;
                x >>= 7;
                if (x) byte |= 0x80;
                out.push_back(static_cast<char>(byte));
            } while (x);
        }
        return out;
    }

    const ColoredGraph& g_;
    std::size_t n_;
    Words best_;
    std::vector<std::uint32_t> best_order_;
    std::vector<std::uint32_t> best_path_;
    bool have_best_ = false;
    std::vector<std::vector<std::uint32_t>> generators_;
};

} // namespace

CanonicalForm canonical_form(const ColoredGraph& g) { return Canonizer(g).run(); }

std::uint64_t edge_token(const Edge& e, VertexId from, std::uint32_t salt) {
    std::uint64_t kind = 0;
    if (e.directed) kind = from == e.source ? 1 : 2;
    return (static_cast<std::uint64_t>(salt) << 40) | (kind << 32) | e.label.id;
}

ColoredGraph encode(const Graph& g) {
    ColoredGraph c;
    for (VertexId v = 0; v < g.vertex_count(); ++v) c.add_vertex(g.label(v).id);
    for (const Edge& e : g.edges()) {
        c.add_arc(e.source, e.target, edge_token(e, e.source));
        c.add_arc(e.target, e.source, edge_token(e, e.target));
    }
    return c;
}

CanonicalCode canonical_code(const Graph& g) { return canonical_form(encode(g)).code; }

std::string to_hex(const CanonicalCode& code) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(code.size() * 2);
    for (unsigned char c : code) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

} // namespace ruleinfer
