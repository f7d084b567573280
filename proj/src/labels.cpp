#include "ruleinfer/labels.hpp"

#include <algorithm>
#include <optional>

namespace ruleinfer {

namespace {

std::vector<std::string> all_names(std::string bottom, std::string top, const std::vector<std::string>& atoms) {
    std::vector<std::string> names{std::move(bottom), std::move(top)};
    for (const auto& a : atoms) {
        if (std::find(names.begin(), names.end(), a) != names.end()) {
            throw LabelError("duplicate label '" + a + "'");
        }
        names.push_back(a);
    }
    return names;
}

} // namespace

LabelPoset LabelPoset::flat(const std::vector<std::string>& atoms, std::string bottom, std::string top) {
    return with_covers(atoms, {}, std::move(bottom), std::move(top));
}

LabelPoset LabelPoset::with_covers(const std::vector<std::string>& atoms,
                                   const std::vector<std::pair<std::string, std::string>>& covers,
                                   std::string bottom, std::string top) {
    LabelPoset p;
    p.names_ = all_names(std::move(bottom), std::move(top), atoms);
    for (std::uint32_t i = 0; i < p.names_.size(); ++i) {
        p.index_.emplace(p.names_[i], i);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> less;
    for (const auto& [a, b] : covers) {
        const auto ia = p.label(a).id;
        const auto ib = p.label(b).id;
        if (ia == ib) {
            throw LabelError("cover '" + a + " < " + b + "' is reflexive");
        }
        less.emplace_back(ia, ib);
    }
    p.covers_ = covers;
    p.flat_ = covers.empty();
    p.build_order(less);
    return p;
}

void LabelPoset::build_order(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& less) {
    const std::size_t n = names_.size();
    leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        leq_[i * n + i] = 1;
        leq_[0 * n + i] = 1; // bottom
        leq_[i * n + 1] = 1; // top
    }
    for (auto [a, b] : less) {
        leq_[a * n + b] = 1;
    }
    // Warshall closure.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!leq_[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (leq_[k * n + j]) leq_[i * n + j] = 1;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (leq_[i * n + j] && leq_[j * n + i]) {
                throw LabelError("label order is not antisymmetric between '" + names_[i] + "' and '" +
                                 names_[j] + "'");
            }
        }
    }
    meet_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            // Greatest common lower bound: a lower bound that dominates all others.
            std::optional<std::size_t> best;
            for (std::size_t c = 0; c < n; ++c) {
                if (!(leq_[c * n + a] && leq_[c * n + b])) continue;
                bool greatest = true;
                for (std::size_t d = 0; d < n && greatest; ++d) {
                    if (leq_[d * n + a] && leq_[d * n + b] && !leq_[d * n + c]) greatest = false;
                }
                if (greatest) {
                    best = c;
                    break;
                }
            }
            if (!best) {
                throw LabelError("labels '" + names_[a] + "' and '" + names_[b] + "' have no meet");
            }
            meet_[a * n + b] = static_cast<std::uint32_t>(*best);
        }
    }
}

Label LabelPoset::label(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        throw LabelError("unknown label '" + std::string(name) + "'");
    }
    return Label{it->second};
}

bool LabelPoset::contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

void LabelPoset::check(Label l) const {
    if (l.id >= names_.size()) {
        throw LabelError("label id " + std::to_string(l.id) + " outside poset");
    }
}

const std::string& LabelPoset::name(Label l) const {
    check(l);
    return names_[l.id];
}

bool LabelPoset::leq(Label a, Label b) const {
    check(a);
    check(b);
    return leq_[a.id * names_.size() + b.id] != 0;
}

Label LabelPoset::meet(Label a, Label b) const {
    check(a);
    check(b);
    return Label{meet_[a.id * names_.size() + b.id]};
}

} // namespace ruleinfer
