#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c0lat/calculus.hpp"
#include "c0lat/error.hpp"
#include "c0lat/jordan.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/parallel.hpp"
#include "c0lat/report.hpp"
#include "c0lat/sampling.hpp"
#include "c0lat/subspace.hpp"
#include "c0lat/tolerances.hpp"

namespace c0lat {

// ---------------------------------------------------------------------------
// Lattice isomorphism evidence

struct LatticeMapReport {
  int samples = 0;
  /// Fraction of sampled N in Lat(T2) with X_*(X^{-1} N) = N.
  double surjective_evidence = 0.0;
  /// Fraction of sampled pairs M != M' in Lat(T1) with X_*(M) != X_*(M').
  double injective_evidence = 0.0;
  /// The same two fractions for (X*)_* from Lat(T2*) to Lat(T1*).
  double dual_surjective_evidence = 0.0;
  double dual_injective_evidence = 0.0;
  /// X_* onto iff (X*)_* one-to-one, and X_* one-to-one iff (X*)_* onto,
  /// read off the sampled evidence.
  bool duality_consistent = false;
  /// Largest principal angle among comparisons that succeeded.
  double max_residual = 0.0;
};

namespace detail {

struct MapEvidence {
  double surjective = 1.0;
  double injective = 1.0;
  double max_residual = 0.0;
};

// Evidence for X_* : Lat(dom) -> Lat(cod), where X dom = cod X.
inline MapEvidence map_evidence(const Matrix& x, const Matrix& dom, const Matrix& cod, int samples,
                                sampling::Rng& rng, const Tolerances& tol) {
  MapEvidence ev;
  const sampling::InvariantSampler cod_sampler(cod, tol);
  sampling::InvariantSampler dom_sampler(dom, tol);
  const Subspace kernel = Subspace::from_orthonormal(linalg::null_space(x, tol.rank));
  if (kernel.dim() > 0 && is_invariant(dom, kernel, tol)) dom_sampler.add_anchor(kernel);

  int onto = 0;
  for (int s = 0; s < samples; ++s) {
    const Subspace n = cod_sampler.draw(rng);
    const Subspace image = lattice_map(x, lattice_preimage(x, n, tol), tol);
    if (equals(image, n, tol)) {
      ++onto;
      ev.max_residual = std::max(ev.max_residual, distance(image, n));
    }
  }
  int distinct = 0;
  int separated = 0;
  for (int s = 0; s < samples; ++s) {
    const Subspace m = dom_sampler.draw(rng);
    std::optional<Subspace> other;
    for (int tries = 0; tries < 8 && !other; ++tries) {
      Subspace cand = (kernel.dim() > 0 && sampling::coin(rng, 0.4)) ? join(m, kernel, tol) : dom_sampler.draw(rng);
      if (!equals(cand, m, tol)) other = std::move(cand);
    }
    if (!other) continue;
    ++distinct;
    const Subspace a = lattice_map(x, m, tol);
    const Subspace b = lattice_map(x, *other, tol);
    if (!equals(a, b, tol)) ++separated;
  }
  if (samples > 0) ev.surjective = static_cast<double>(onto) / samples;
  if (distinct > 0) ev.injective = static_cast<double>(separated) / distinct;
  return ev;
}

}  // namespace detail

/// Sampled evidence that X_* is a bijection Lat(T1) -> Lat(T2), with the
/// adjoint map (X*)_* : Lat(T2*) -> Lat(T1*) checked alongside.
inline LatticeMapReport check_lattice_isomorphism(const Matrix& x, const Matrix& t1, const Matrix& t2, int samples,
                                                  std::uint64_t seed = 0, const Tolerances& tol = {}) {
  if (x.rows() != t2.rows() || x.cols() != t1.rows()) throw DimensionMismatchError("intertwiner shape mismatch");
  const double scale = intertwining_scale(t1, t2) * std::max(1.0, linalg::op_norm(x));
  if (intertwining_residual(x, t1, t2) > tol.intertwining * scale) throw PreconditionError("X does not intertwine T1 and T2");
  if (samples <= 0) throw PreconditionError("samples must be positive");
  sampling::Rng rng(seed);
  const detail::MapEvidence fwd = detail::map_evidence(x, t1, t2, samples, rng, tol);
  const Matrix xs = x.adjoint();
  const detail::MapEvidence dual = detail::map_evidence(xs, t2.adjoint(), t1.adjoint(), samples, rng, tol);
  LatticeMapReport r;
  r.samples = samples;
  r.surjective_evidence = fwd.surjective;
  r.injective_evidence = fwd.injective;
  r.dual_surjective_evidence = dual.surjective;
  r.dual_injective_evidence = dual.injective;
  r.duality_consistent = ((fwd.surjective == 1.0) == (dual.injective == 1.0)) &&
                         ((fwd.injective == 1.0) == (dual.surjective == 1.0));
  r.max_residual = std::max(fwd.max_residual, dual.max_residual);
  return r;
}

// ---------------------------------------------------------------------------
// Modularity of Lat(T), with the sum-map proof objects

namespace detail {

inline Json dims_witness(std::initializer_list<std::pair<const char*, const Subspace*>> items) {
  Json w = Json::object();
  for (const auto& [name, s] : items) w[name] = s->dim();
  return w;
}

inline Matrix restrict(const Matrix& t, const Subspace& m) { return m.basis().adjoint() * t * m.basis(); }

// Proof objects for one triple (M1, M2, M3), M3 ⊆ M1: the sum map
// X(a2, a3) = a2 + a3 on the external direct sum M2 ⊕ M3, and the preimage
// identity X^{-1}(M1 ∩ (M2 ∨ M3)) = (M1 ∩ M2) ⊕ M3.
inline void sum_map_checks(const Matrix& t, const Subspace& m1, const Subspace& m2, const Subspace& m3,
                           std::size_t trial, const Tolerances& tol, VerificationReport& rep) {
  const Subspace j = join(m2, m3, tol);
  const Eigen::Index d2 = m2.dim();
  const Eigen::Index d3 = m3.dim();
  if (j.dim() == 0) return;
  Matrix stacked(t.rows(), d2 + d3);
  stacked << m2.basis(), m3.basis();
  const Matrix x = j.basis().adjoint() * stacked;
  const Matrix a = linalg::direct_sum(restrict(t, m2), restrict(t, m3));
  const Matrix tj = restrict(t, j);
  const double inter = intertwining_residual(x, a, tj);
  rep.note_metric("sum_map_intertwining", inter);
  if (inter > tol.invariance * std::max(1.0, linalg::op_norm(t))) {
    rep.add_violation({trial, "sum-map-intertwining", inter, dims_witness({{"m2", &m2}, {"m3", &m3}, {"join", &j}})});
  }
  const Eigen::Index rank = linalg::numerical_rank(x, tol.rank);
  if (rank != j.dim()) {
    rep.add_violation({trial, "sum-map-range", static_cast<double>(j.dim() - rank),
                       {{"rank", rank}, {"join", j.dim()}}});
  }
  const Subspace target = meet(m1, j, tol);
  const Subspace coords = Subspace::span(j.basis().adjoint() * target.basis(), tol.rank);
  const Subspace pre = lattice_preimage(x, target.dim() == 0 ? Subspace::zero(j.dim()) : coords, tol);
  const Subspace m12 = meet(m1, m2, tol);
  Matrix expected = Matrix::Zero(d2 + d3, m12.dim() + d3);
  expected.topLeftCorner(d2, m12.dim()) = m2.basis().adjoint() * m12.basis();
  expected.bottomRightCorner(d3, d3) = Matrix::Identity(d3, d3);
  const Subspace want = Subspace::span(expected, tol.rank);
  const double res = distance(pre, want);
  rep.note_metric("preimage_identity", res);
  if (!equals(pre, want, tol)) {
    rep.add_violation({trial, "preimage-identity", res,
                       {{"preimage_dim", pre.dim()}, {"expected_dim", want.dim()}, {"m1_meet_m2", m12.dim()}, {"m3", d3}}});
  }
}

inline void require_c0(const Matrix& t, Eigen::Index cap) {
  if (t.rows() != t.cols()) throw DimensionMismatchError("operator must be square");
  if (t.rows() > cap) throw CapExceededError("matrix exceeds the verifier size cap");
  if (!detail::is_c0_matrix(t)) throw NotC0Error("verifier requires a C0 matrix");
}

}  // namespace detail

/// Samples triples M1, M2, M3 = M1 ∩ R of invariant subspaces and checks
/// M1 ∩ (M2 ∨ M3) = (M1 ∩ M2) ∨ M3, plus the sum-map proof objects.
/// Trial i draws with seed + i.
inline VerificationReport theorem97_verifier(const Matrix& t, std::size_t triples, std::uint64_t seed = 0,
                                             const Tolerances& tol = {}) {
  detail::require_c0(t, 10);
  const sampling::InvariantSampler sampler(t, tol);
  auto parts = parallel_map(triples, [&](std::size_t i) {
    VerificationReport rep;
    sampling::Rng rng(seed + i);
    const Subspace m1 = sampler.draw(rng);
    const Subspace m2 = sampler.draw(rng);
    const Subspace r = sampler.draw(rng);
    const Subspace m3 = meet(m1, r, tol);
    const TripleVerdict v = check_modular_triple(m1, m2, m3, tol);
    rep.note_metric("modular_identity", v.residual);
    if (!v.holds) {
      rep.add_violation({i, "modular-identity", v.residual,
                         {{"m1", m1.dim()}, {"m2", m2.dim()}, {"m3", m3.dim()}, {"lhs", v.lhs.dim()}, {"rhs", v.rhs.dim()}}});
    }
    detail::sum_map_checks(t, m1, m2, m3, i, tol, rep);
    return rep;
  });
  VerificationReport out;
  out.suite = "modular-thm97";
  out.seed = seed;
  out.trials = triples;
  for (const auto& p : parts) out.merge(p);
  return out;
}

/// Pulls triples N1, N2, N3 ⊆ N1 of Lat(T2) back through the quasiaffinity
/// Y and checks Y_*(M_i) = N_i, Y_*(M1 ∩ M2) = Y_*(M1) ∩ Y_*(M2), and that
/// the modular identity on the T1 side carries over to the T2 side.
inline VerificationReport theorem_x3_verifier(const Matrix& t1, const Matrix& t2, const Matrix& y, std::size_t samples,
                                              std::uint64_t seed = 0, const Tolerances& tol = {}) {
  if (y.rows() != t2.rows() || y.cols() != t1.rows()) throw DimensionMismatchError("Y has the wrong shape");
  const double scale = intertwining_scale(t1, t2) * std::max(1.0, linalg::op_norm(y));
  if (intertwining_residual(y, t1, t2) > tol.intertwining * scale) throw PreconditionError("Y does not intertwine T1 and T2");
  if (y.rows() != y.cols() || linalg::numerical_rank(y, tol.rank) < y.rows()) throw PreconditionError("Y is rank-deficient");
  const sampling::InvariantSampler sampler(t2, tol);
  auto parts = parallel_map(samples, [&](std::size_t i) {
    VerificationReport rep;
    sampling::Rng rng(seed + i);
    const Subspace n1 = sampler.draw(rng);
    const Subspace n2 = sampler.draw(rng);
    const Subspace n3 = meet(n1, sampler.draw(rng), tol);
    const std::array<const Subspace*, 3> ns{&n1, &n2, &n3};
    std::array<Subspace, 3> ms;
    for (std::size_t k = 0; k < 3; ++k) {
      ms[k] = lattice_preimage(y, *ns[k], tol);
      const InvarianceResult inv = is_invariant(t1, ms[k], tol);
      rep.note_metric("preimage_invariance", inv.residual);
      if (!inv) rep.add_violation({i, "preimage-not-invariant", inv.residual, {{"index", k + 1}}});
      const Subspace back = lattice_map(y, ms[k], tol);
      const double d = distance(back, *ns[k]);
      rep.note_metric("surjectivity_instances", d);
      if (!equals(back, *ns[k], tol)) rep.add_violation({i, "surjectivity-instance", d, {{"index", k + 1}}});
    }
    const Subspace lhs = lattice_map(y, meet(ms[0], ms[1], tol), tol);
    const Subspace rhs = meet(lattice_map(y, ms[0], tol), lattice_map(y, ms[1], tol), tol);
    const double po = distance(lhs, rhs);
    rep.note_metric("prop_o_identity", po);
    if (!equals(lhs, rhs, tol)) rep.add_violation({i, "prop-o", po, {{"lhs", lhs.dim()}, {"rhs", rhs.dim()}}});
    if (!contains(ms[0], ms[2], tol)) {
      rep.add_violation({i, "preimage-order", containment_residual(ms[0], ms[2]), Json::object()});
      return rep;
    }
    const TripleVerdict v1 = check_modular_triple(ms[0], ms[1], ms[2], tol);
    const TripleVerdict v2 = check_modular_triple(n1, n2, n3, tol);
    rep.note_metric("modular_t1", v1.residual);
    rep.note_metric("modular_t2", v2.residual);
    const Json dims = {{"n1", n1.dim()}, {"n2", n2.dim()}, {"n3", n3.dim()}};
    if (!v1.holds) rep.add_violation({i, "modular-t1", v1.residual, dims});
    if (v1.holds && !v2.holds) rep.add_violation({i, "transfer", v2.residual, dims});
    return rep;
  });
  VerificationReport out;
  out.suite = "x3-transfer";
  out.seed = seed;
  out.trials = samples;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace c0lat
