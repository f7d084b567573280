#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ruleinfer {

/// Interned label handle. Meaningful only together with the poset that issued it.
struct Label {
    std::uint32_t id = 0;

    friend constexpr bool operator==(Label, Label) = default;
    friend constexpr auto operator<=>(Label, Label) = default;
};

class LabelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite bounded partial order of labels with meets.
///
/// The bottom element (conventionally written as the empty label) always has
/// id 0 and the top element id 1. Atoms follow in declaration order. The order
/// is given by cover pairs `a < b`; with no covers the poset is flat
/// (bottom < atom < top for every atom).
class LabelPoset {
public:
    static constexpr std::string_view default_bottom = "\xce\xb5"; // ε
    static constexpr std::string_view default_top = "\xe2\x8a\xa4"; // ⊤

    /// Flat poset over the given atoms.
    static LabelPoset flat(const std::vector<std::string>& atoms,
                           std::string bottom = std::string(default_bottom),
                           std::string top = std::string(default_top));

    /// General poset. Throws LabelError when the covers induce a cycle or
    /// some pair lacks a unique greatest lower bound.
    static LabelPoset with_covers(const std::vector<std::string>& atoms,
                                  const std::vector<std::pair<std::string, std::string>>& covers,
                                  std::string bottom = std::string(default_bottom),
                                  std::string top = std::string(default_top));

    [[nodiscard]] Label bottom() const noexcept { return Label{0}; }
    [[nodiscard]] Label top() const noexcept { return Label{1}; }
    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] bool is_flat() const noexcept { return flat_; }

    /// Throws LabelError for names outside the poset.
    [[nodiscard]] Label label(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const;
    [[nodiscard]] const std::string& name(Label l) const;

    [[nodiscard]] bool leq(Label a, Label b) const;
    [[nodiscard]] Label meet(Label a, Label b) const;

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> covers() const { return covers_; }

private:
    LabelPoset() = default;
    void check(Label l) const;
    void build_order(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& less);

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<std::pair<std::string, std::string>> covers_;
    std::vector<char> leq_;   // n*n
    std::vector<std::uint32_t> meet_; // n*n
    bool flat_ = true;
};

} // namespace ruleinfer
