#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/decor/lie.hpp"
#include "gcx/permutation.hpp"
#include "gcx/rational.hpp"

namespace gcx {

// Sparse combination of basis labels of one vertex space.
using DecorationVector = std::vector<std::pair<std::size_t, Rational>>;

enum class DecorationKind { Com, ComBar, Lie };

/**
 * Per-vertex label theory. Flags of a valence-k vertex are 0..k-1;
 * permutations map flag i to flag perm[i].
 */
class DecorationSystem {
 public:
  virtual ~DecorationSystem() = default;
  virtual DecorationKind kind() const = 0;
  virtual std::string id() const = 0;
  virtual std::size_t space_dim(int genus, int valence) const = 0;
  virtual std::vector<std::string> basis_labels(int genus, int valence) const = 0;
  virtual DecorationVector act(const Permutation& flag_perm, int genus, std::size_t basis_index) const = 0;
  // Composes (genus1, valence1, x1) at flag f1 with (genus2, valence2, x2) at f2. The merged vertex lists
  // the remaining flags of the first vertex in order, then those of the second.
  virtual DecorationVector contract_compose(int genus1, int valence1, std::size_t x1, int f1, int genus2, int valence2,
                                            std::size_t x2, int f2) const = 0;
};

class CommutativeSystem final : public DecorationSystem {
 public:
  explicit CommutativeSystem(bool extended) : extended_(extended) {}
  DecorationKind kind() const override { return extended_ ? DecorationKind::ComBar : DecorationKind::Com; }
  std::string id() const override { return extended_ ? "com-bar" : "com"; }
  std::size_t space_dim(int genus, int valence) const override {
    if (2 * genus + valence < 3) return 0;
    return (genus == 0 || extended_) ? 1 : 0;
  }
  std::vector<std::string> basis_labels(int genus, int valence) const override {
    if (space_dim(genus, valence) == 0) return {};
    return {"1"};
  }
  DecorationVector act(const Permutation& flag_perm, int genus, std::size_t basis_index) const override {
    if (space_dim(genus, static_cast<int>(flag_perm.size())) == 0 || basis_index != 0)
      throw std::invalid_argument("com act: no such basis element");
    return {{0, Rational(1)}};
  }
  DecorationVector contract_compose(int genus1, int valence1, std::size_t, int, int genus2, int valence2, std::size_t,
                                    int) const override {
    if (space_dim(genus1 + genus2, valence1 + valence2 - 2) == 0) return {};
    return {{0, Rational(1)}};
  }

 private:
  bool extended_;
};

class LieSystem final : public DecorationSystem {
 public:
  DecorationKind kind() const override { return DecorationKind::Lie; }
  std::string id() const override { return "lie"; }
  std::size_t space_dim(int genus, int valence) const override { return genus == 0 ? lie_dimension(valence) : 0; }
  std::vector<std::string> basis_labels(int genus, int valence) const override {
    std::vector<std::string> out;
    auto flags = identity_permutation(static_cast<std::size_t>(std::max(valence, 0)));
    for (std::size_t i = 0; i < space_dim(genus, valence); ++i) out.push_back(LieElement::basis(flags, i).to_string());
    return out;
  }
  DecorationVector act(const Permutation& flag_perm, int genus, std::size_t basis_index) const override {
    int k = static_cast<int>(flag_perm.size());
    if (basis_index >= space_dim(genus, k)) throw std::invalid_argument("lie act: no such basis element");
    std::map<int, int> relabel;
    for (int i = 0; i < k; ++i) relabel[i] = flag_perm[static_cast<std::size_t>(i)];
    auto y = lie_act(relabel, LieElement::basis(identity_permutation(static_cast<std::size_t>(k)), basis_index));
    return sparse(y);
  }
  DecorationVector contract_compose(int genus1, int valence1, std::size_t x1, int f1, int genus2, int valence2,
                                    std::size_t x2, int f2) const override {
    if (genus1 != 0 || genus2 != 0) return {};
    // second vertex flags are shifted past the first
    auto a = LieElement::basis(identity_permutation(static_cast<std::size_t>(valence1)), x1);
    std::vector<int> flags2;
    for (int i = 0; i < valence2; ++i) flags2.push_back(valence1 + i);
    auto b = LieElement::basis(flags2, x2);
    auto c = lie_contract(a, f1, b, valence1 + f2);
    // renumber remaining flags to 0..k-1 preserving order
    std::map<int, int> relabel;
    int next = 0;
    for (int f : c.flags) relabel[f] = next++;
    return sparse(lie_act(relabel, c));
  }

 private:
  static DecorationVector sparse(const LieElement& e) {
    DecorationVector out;
    for (std::size_t i = 0; i < e.coeffs.size(); ++i)
      if (e.coeffs[i] != 0) out.push_back({i, e.coeffs[i]});
    return out;
  }
};

inline std::unique_ptr<DecorationSystem> com_system(bool extended) { return std::make_unique<CommutativeSystem>(extended); }
inline std::unique_ptr<DecorationSystem> lie_system() { return std::make_unique<LieSystem>(); }

}  // namespace gcx
