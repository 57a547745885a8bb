#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c0lat/error.hpp"
#include "c0lat/subspace.hpp"

namespace c0lat {

/// A finite lattice given by labelled elements and a partial order. The
/// constructor validates the order axioms and tabulates meets and joins.
class FiniteLattice {
 public:
  static constexpr std::size_t kMaxElements = 4096;

  FiniteLattice(std::vector<std::string> labels, std::vector<std::vector<bool>> leq)
      : labels_(std::move(labels)), leq_(std::move(leq)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw PreconditionError("a lattice needs at least one element");
    if (n > kMaxElements) throw CapExceededError("lattice exceeds element cap");
    if (leq_.size() != n) throw DimensionMismatchError("order relation has the wrong size");
    for (const auto& row : leq_) {
      if (row.size() != n) throw DimensionMismatchError("order relation has the wrong size");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq_[i][i]) throw PreconditionError("order is not reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i][j] && leq_[j][i]) throw PreconditionError("order is not antisymmetric");
        if (!leq_[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (leq_[j][k] && !leq_[i][k]) throw PreconditionError("order is not transitive");
        }
      }
    }
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const auto m = bound(i, j, /*lower=*/true);
        const auto u = bound(i, j, /*lower=*/false);
        if (!m) throw PreconditionError("elements " + labels_[i] + ", " + labels_[j] + " have no meet");
        if (!u) throw PreconditionError("elements " + labels_[i] + ", " + labels_[j] + " have no join");
        meet_[i * n + j] = meet_[j * n + i] = static_cast<std::uint16_t>(*m);
        join_[i * n + j] = join_[j * n + i] = static_cast<std::uint16_t>(*u);
      }
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  bool leq(std::size_t i, std::size_t j) const { return leq_.at(i).at(j); }
  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }

 private:
  // Greatest lower bound (or least upper bound) of i and j, if it exists.
  std::optional<std::size_t> bound(std::size_t i, std::size_t j, bool lower) const {
    const std::size_t n = size();
    auto below = [&](std::size_t a, std::size_t b) { return lower ? leq_[a][b] : leq_[b][a]; };
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < n; ++k) {
      if (below(k, i) && below(k, j) && (!best || below(*best, k))) best = k;
    }
    if (!best) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      if (below(k, i) && below(k, j) && !below(k, *best)) return std::nullopt;
    }
    return best;
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::uint16_t> meet_;
  std::vector<std::uint16_t> join_;
};

struct LatticeVerdict {
  bool holds = true;
  /// Violating triple (x, y, z) when holds is false.
  std::optional<std::array<std::size_t, 3>> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// x ∧ (y ∨ z) = (x ∧ y) ∨ z for all z ≤ x.
inline LatticeVerdict lattice_is_modular(const FiniteLattice& lat) {
  const std::size_t n = lat.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z) {
      if (!lat.leq(z, x)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (lat.meet(x, lat.join(y, z)) != lat.join(lat.meet(x, y), z)) return {false, std::array{x, y, z}};
      }
    }
  }
  return {};
}

/// x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) for all triples.
inline LatticeVerdict lattice_is_distributive(const FiniteLattice& lat) {
  const std::size_t n = lat.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (lat.meet(x, lat.join(y, z)) != lat.join(lat.meet(x, y), lat.meet(x, z))) {
          return {false, std::array{x, y, z}};
        }
      }
    }
  }
  return {};
}

/// The pentagon N5: 0 < a < b < 1 and 0 < c < 1.
inline FiniteLattice pentagon_lattice() {
  // 0:bottom 1:a 2:b 3:c 4:top
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (std::size_t i = 0; i < 5; ++i) {
    leq[0][i] = true;
    leq[i][4] = true;
    leq[i][i] = true;
  }
  leq[1][2] = true;
  return FiniteLattice({"0", "a", "b", "c", "1"}, std::move(leq));
}

/// The diamond M3: three pairwise incomparable atoms.
inline FiniteLattice diamond_lattice() {
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (std::size_t i = 0; i < 5; ++i) {
    leq[0][i] = true;
    leq[i][4] = true;
    leq[i][i] = true;
  }
  return FiniteLattice({"0", "a", "b", "c", "1"}, std::move(leq));
}

struct SubspaceLattice {
  std::vector<Subspace> elements;
  FiniteLattice lattice;
};

/// Closes a list of subspaces under meet and join (to a fixpoint, capped)
/// and returns it as a finite lattice ordered by inclusion.
inline SubspaceLattice lattice_from_subspaces(const std::vector<Subspace>& generators, const Tolerances& tol = {},
                                              std::size_t cap = FiniteLattice::kMaxElements) {
  std::vector<Subspace> elems;
  auto add = [&](const Subspace& s) {
    for (const auto& e : elems) {
      if (equals(e, s, tol)) return false;
    }
    if (elems.size() >= cap) throw CapExceededError("subspace lattice closure exceeds cap");
    elems.push_back(s);
    return true;
  };
  for (const auto& g : generators) add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        grew |= add(meet(elems[i], elems[j], tol));
        grew |= add(join(elems[i], elems[j], tol));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("S" + std::to_string(i) + "[dim " + std::to_string(elems[i].dim()) + "]");
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = (i == j) || contains(elems[j], elems[i], tol);
  }
  return {elems, FiniteLattice(std::move(labels), std::move(leq))};
}

}  // namespace c0lat
