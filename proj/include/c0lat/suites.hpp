#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "c0lat/blaschke.hpp"
#include "c0lat/calculus.hpp"
#include "c0lat/error.hpp"
#include "c0lat/io.hpp"
#include "c0lat/jordan.hpp"
#include "c0lat/lattice.hpp"
#include "c0lat/modelspace.hpp"
#include "c0lat/parallel.hpp"
#include "c0lat/report.hpp"
#include "c0lat/sampling.hpp"
#include "c0lat/subspace.hpp"
#include "c0lat/tolerances.hpp"
#include "c0lat/verifiers.hpp"

namespace c0lat {

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  /// Triples (or samples) per matrix for the operator suites; 0 picks the
  /// suite default.
  std::size_t triples = 0;
  Tolerances tol;
  bool json = false;
  std::vector<std::string> inputs;

  Json to_json() const {
    Json tj = Json::object();
    for (const auto& [k, v] : tol.as_map()) tj[k] = v;
    return {{"suite", suite}, {"seed", seed},   {"trials", trials},           {"triples", triples},
            {"tolerances", tj}, {"output", json ? "json" : "text"}, {"inputs", inputs}};
  }
};

struct SuiteInfo {
  std::string name;
  std::string statement;
  std::size_t default_triples = 0;
};

inline const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = {
      {"lattice-laws",
       "inner divisors of a finite Blaschke product form a lattice under gcd and lcm; the lattice of all "
       "subspaces of C^n is modular",
       0},
      {"prop14", "theta(S(theta)) = 0 and phi(S(theta)) != 0 for every proper divisor phi: the minimal function of S(theta) is theta", 0},
      {"propq-meetjoin",
       "Lat(S(theta)) = {phi H(theta/phi) : phi | theta}, with intersection given by lcm and closed span by gcd", 0},
      {"distributive", "Lat(S(theta)) is a distributive lattice", 0},
      {"modular-thm97",
       "Lat(T) is modular for a C0 operator with property (P), hence for every C0 matrix; also checks the "
       "sum map (a2, a3) -> a2 + a3 and the preimage identity of the argument",
       100},
      {"x3-transfer",
       "if a quasiaffinity Y with Y T1 = T2 Y induces an onto lattice map and Lat(T1) is modular, then Lat(T2) "
       "is modular",
       50},
      {"calculus",
       "u -> u(T) is multiplicative and contractive on H-infinity, and u(T) is the limit of u(rT) as r -> 1", 0},
      {"duality", "for an intertwiner X, X_* is onto exactly when (X*)_* is one-to-one", 30},
      {"oracle-latmatch",
       "for theta with distinct zeros the divisor subspaces exhaust Lat(S(theta)) (checked against eigenvector spans)",
       0},
  };
  return catalog;
}

inline const SuiteInfo& suite_info(const std::string& name) {
  for (const auto& s : suite_catalog()) {
    if (s.name == name) return s;
  }
  throw InputError("unknown suite: " + name);
}

namespace suites {

using sampling::Rng;

inline BlaschkeProduct random_theta(Rng& rng, int max_degree) {
  sampling::BlaschkeOptions opt;
  opt.max_degree = max_degree;
  return sampling::random_blaschke(rng, opt);
}

// lattice-laws ---------------------------------------------------------------

inline VerificationReport lattice_laws_trial(std::size_t i, Rng& rng, const Tolerances& tol) {
  VerificationReport rep;
  const BlaschkeProduct a = random_theta(rng, 6);
  BlaschkeProduct b = random_theta(rng, 6);
  const BlaschkeProduct c = random_theta(rng, 6);
  if (sampling::coin(rng, 0.3)) b = b * a;  // shared zeros
  auto expect = [&](bool ok, const char* kind) {
    if (!ok) rep.add_violation({i, kind, 1.0, {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}}});
  };
  expect(equiv(gcd(a, b), gcd(b, a)) && equiv(lcm(a, b), lcm(b, a)), "commutativity");
  expect(equiv(gcd(gcd(a, b), c), gcd(a, gcd(b, c))) && equiv(lcm(lcm(a, b), c), lcm(a, lcm(b, c))), "associativity");
  expect(equiv(gcd(a, lcm(a, b)), a) && equiv(lcm(a, gcd(a, b)), a), "absorption");
  expect(gcd(a, b).degree() + lcm(a, b).degree() == a.degree() + b.degree(), "degree-identity");
  expect(divides(gcd(a, b), a) && divides(gcd(a, b), b) && divides(a, lcm(a, b)) && divides(b, lcm(a, b)), "bounds");
  expect(equiv(divide(a * b, b), a), "division");
  const BlaschkeProduct rotated = a.with_constant(-a.constant());
  expect(divides(a, rotated) && divides(rotated, a) && equiv(a, rotated), "antisymmetry");
  expect((divides(a, b) && divides(b, a)) == equiv(a, b), "antisymmetry");

  double modulus = 0.0;
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 64.0);
    modulus = std::max(modulus, std::abs(std::abs(evaluate(a, z)) - 1.0));
  }
  rep.note_metric("boundary_modulus", modulus);
  if (modulus > 1e-9) rep.add_violation({i, "boundary-modulus", modulus, {{"a", to_string(a)}}});

  const int n = sampling::uniform_int(rng, 1, 6);
  const Subspace l = Subspace::span(sampling::gaussian_matrix(rng, n, sampling::uniform_int(rng, 0, n)));
  const Subspace m = Subspace::span(sampling::gaussian_matrix(rng, n, sampling::uniform_int(rng, 0, n)));
  const Subspace sub = l.dim() == 0 ? l : Subspace::span(l.basis() * sampling::gaussian_matrix(rng, l.dim(), sampling::uniform_int(rng, 0, static_cast<int>(l.dim()))));
  const TripleVerdict v = check_modular_triple(l, m, sub, tol);
  rep.note_metric("subspace_modular", v.residual);
  if (!v.holds) rep.add_violation({i, "subspace-modular", v.residual, {{"n", n}, {"l", l.dim()}, {"m", m.dim()}}});
  const double absorb = std::max(distance(meet(l, join(l, m, tol), tol), l), distance(join(l, meet(l, m, tol), tol), l));
  rep.note_metric("subspace_absorption", absorb);
  if (absorb > tol.equality) rep.add_violation({i, "subspace-absorption", absorb, {{"n", n}}});
  return rep;
}

// prop14 ---------------------------------------------------------------------

inline VerificationReport prop14_trial(std::size_t i, Rng& rng, const Tolerances& tol) {
  VerificationReport rep;
  const BlaschkeProduct theta = random_theta(rng, 6);
  const Json who = {{"theta", to_string(theta)}};
  const ModelOperator op = compressed_shift(theta);
  const Matrix& s = op.matrix;

  const double ann = linalg::op_norm(apply_blaschke(s, theta));
  rep.note_metric("annihilation", ann);
  if (ann > kAnnihilationBound) rep.add_violation({i, "annihilation", ann, who});
  for (const auto& phi : maximal_proper_divisors(theta)) {
    const double norm = linalg::op_norm(apply_blaschke(s, phi));
    rep.note_min_metric("min_proper_divisor_norm", norm);
    if (norm <= kProperDivisorFloor) rep.add_violation({i, "proper-divisor-annihilates", norm, {{"theta", to_string(theta)}, {"phi", to_string(phi)}}});
  }

  const std::vector<Complex> zs = theta.zero_list();
  double shape = std::max(0.0, linalg::op_norm(s) - 1.0);
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    shape = std::max(shape, std::abs(s(r, r) - zs[static_cast<std::size_t>(r)]));
    for (Eigen::Index c = r + 1; c < s.cols(); ++c) shape = std::max(shape, std::abs(s(r, c)));
  }
  rep.note_metric("shift_structure", shape);
  if (shape > 1e-9) rep.add_violation({i, "shift-structure", shape, who});

  try {
    const BlaschkeProduct m = minimal_function(s);
    if (!equiv_within(m, theta, 1e-6)) rep.add_violation({i, "minimal-function", 1.0, {{"theta", to_string(theta)}, {"found", to_string(m)}}});
  } catch (const VerificationFailure& e) {
    rep.add_violation({i, "minimal-function", 1.0, {{"theta", to_string(theta)}, {"error", e.what()}}});
  }
  (void)tol;
  return rep;
}

// propq-meetjoin -------------------------------------------------------------

inline VerificationReport propq_trial(std::size_t i, Rng& rng, const Tolerances& tol) {
  VerificationReport rep;
  const BlaschkeProduct theta = random_theta(rng, 5);
  const std::vector<BlaschkeProduct> divs = divisors(theta);
  auto pick = [&]() -> const BlaschkeProduct& {
    return divs[static_cast<std::size_t>(sampling::uniform_int(rng, 0, static_cast<int>(divs.size()) - 1))];
  };
  const BlaschkeProduct& p1 = pick();
  const BlaschkeProduct& p2 = pick();
  const Json who = {{"theta", to_string(theta)}, {"phi1", to_string(p1)}, {"phi2", to_string(p2)}};
  const ModelSpace space(theta);
  const Matrix s = compressed_shift(space).matrix;
  const Subspace a1 = space.divisor_subspace(p1, tol);
  const Subspace a2 = space.divisor_subspace(p2, tol);
  for (const auto* a : {&a1, &a2}) {
    const InvarianceResult inv = is_invariant(s, *a, tol);
    rep.note_metric("divisor_invariance", inv.residual);
    if (!inv) rep.add_violation({i, "divisor-invariance", inv.residual, who});
  }
  if (a1.dim() != static_cast<Eigen::Index>(theta.degree() - p1.degree())) rep.add_violation({i, "dimension", 1.0, who});
  const double dm = distance(meet(a1, a2, tol), space.divisor_subspace(lcm(p1, p2), tol));
  const double dj = distance(join(a1, a2, tol), space.divisor_subspace(gcd(p1, p2), tol));
  rep.note_metric("meet_formula", dm);
  rep.note_metric("join_formula", dj);
  if (dm > tol.equality) rep.add_violation({i, "meet-formula", dm, who});
  if (dj > tol.equality) rep.add_violation({i, "join-formula", dj, who});
  if (divides(p1, p2) != contains(a1, a2, tol)) rep.add_violation({i, "order-reversal", 1.0, who});
  return rep;
}

// distributive ---------------------------------------------------------------

inline VerificationReport distributive_trial(std::size_t i, Rng& rng, const Tolerances& tol) {
  VerificationReport rep;
  BlaschkeProduct theta;
  do {
    theta = random_theta(rng, 5);
  } while (divisor_count(theta) > 12);
  const std::vector<LatticeEntry> lat = enumerate_lattice(theta, 4096, tol);
  const std::size_t n = lat.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const TripleVerdict v = check_distributive_triple(lat[x].subspace, lat[y].subspace, lat[z].subspace, tol);
        rep.note_metric("distributive_identity", v.residual);
        if (!v.holds) {
          rep.add_violation({i, "distributive-identity", v.residual,
                             {{"theta", to_string(theta)}, {"triple", {x, y, z}}}});
        }
      }
    }
  }
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x) {
    labels.push_back(to_string(lat[x].divisor));
    for (std::size_t y = 0; y < n; ++y) leq[x][y] = divides(lat[y].divisor, lat[x].divisor);
  }
  if (!lattice_is_distributive(FiniteLattice(labels, leq))) {
    rep.add_violation({i, "divisor-lattice", 1.0, {{"theta", to_string(theta)}}});
  }
  return rep;
}

// oracle-latmatch ------------------------------------------------------------

inline VerificationReport oracle_trial(std::size_t i, Rng& rng, const Tolerances& tol) {
  VerificationReport rep;
  const BlaschkeProduct theta = sampling::random_blaschke_distinct(rng, 3, 1);
  const Json who = {{"theta", to_string(theta)}};
  const std::vector<LatticeEntry> lat = enumerate_lattice(theta, 4096, tol);
  const std::vector<Subspace> oracle = brute_force_lat(compressed_shift(theta).matrix, tol);
  if (lat.size() != oracle.size()) {
    rep.add_violation({i, "size", std::abs(static_cast<double>(lat.size()) - static_cast<double>(oracle.size())), who});
    return rep;
  }
  std::vector<int> hits(oracle.size(), 0);
  for (const auto& e : lat) {
    int found = 0;
    double best = std::numbers::pi / 2;
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      best = std::min(best, distance(e.subspace, oracle[k]));
      if (equals(e.subspace, oracle[k], tol)) {
        ++found;
        ++hits[k];
      }
    }
    rep.note_metric("match_distance", best);
    if (found != 1) rep.add_violation({i, "unmatched-divisor", best, {{"theta", to_string(theta)}, {"phi", to_string(e.divisor)}}});
  }
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    if (hits[k] != 1) rep.add_violation({i, "unmatched-oracle", static_cast<double>(hits[k]), {{"theta", to_string(theta)}, {"mask", k}}});
  }
  return rep;
}

// calculus -------------------------------------------------------------------

inline constexpr std::array<double, 4> kRadialLadder = {0.9, 0.99, 0.995, 0.999};

inline VerificationReport calculus_trial(std::size_t i, Rng& rng, const Matrix* fixed, const Tolerances& tol) {
  VerificationReport rep;
  const Matrix t = fixed ? *fixed : sampling::random_contraction(rng, 8, 0.8);
  sampling::BlaschkeOptions opt;
  opt.max_degree = 4;
  const BlaschkeProduct b1 = sampling::random_blaschke(rng, opt);
  const BlaschkeProduct b2 = sampling::random_blaschke(rng, opt);
  const Json who = {{"b1", to_string(b1)}, {"b2", to_string(b2)}, {"n", t.rows()}};
  const Matrix u1 = apply_blaschke(t, b1);
  const Matrix u2 = apply_blaschke(t, b2);
  const Matrix u12 = apply_blaschke(t, b1 * b2);
  const double mult = linalg::op_norm(u12 - u1 * u2);
  rep.note_metric("multiplicativity", mult);
  if (mult > 1e-8) rep.add_violation({i, "multiplicativity", mult, who});
  const double excess = std::max({linalg::op_norm(u1), linalg::op_norm(u2), linalg::op_norm(u12)}) - 1.0;
  rep.note_metric("contractivity_excess", std::max(0.0, excess));
  if (excess > 1e-8) rep.add_violation({i, "contractivity", excess, who});
  const std::vector<double> radial = radial_validate(t, b1 * b2, kRadialLadder);
  rep.note_metric("radial_residual", radial.back());
  if (radial.back() > 1e-2) rep.add_violation({i, "radial-limit", radial.back(), who});
  if (!radial_residuals_decreasing(radial)) rep.add_violation({i, "radial-monotone", radial.back(), who});
  (void)tol;
  return rep;
}

// x3-transfer ----------------------------------------------------------------

inline void retag(VerificationReport& sub, std::size_t trial, const char* key) {
  for (auto& v : sub.violations) {
    v.witness[key] = v.trial;
    v.trial = trial;
  }
}

inline VerificationReport x3_trial(std::size_t i, Rng& rng, const Matrix* fixed, std::size_t samples,
                                   std::uint64_t seed, const Tolerances& tol) {
  const Matrix t1 = fixed ? *fixed : sampling::random_c0(rng).matrix;
  const Matrix q = sampling::random_conditioned(rng, t1.rows(), sampling::uniform_real(rng, 1.0, 10.0));
  const Matrix t2 = q * t1 * q.inverse();
  VerificationReport sub = theorem_x3_verifier(t1, t2, q, samples, seed, tol);
  retag(sub, i, "triple");
  return sub;
}

// modular-thm97 --------------------------------------------------------------

inline VerificationReport thm97_trial(std::size_t i, Rng& rng, std::size_t triples, std::uint64_t seed,
                                      const Tolerances& tol) {
  const Matrix t = sampling::random_c0(rng).matrix;
  VerificationReport sub = theorem97_verifier(t, triples, seed, tol);
  retag(sub, i, "triple");
  return sub;
}

// duality --------------------------------------------------------------------

struct ConstructedIntertwiner {
  Matrix t1;
  Matrix t2;
  Matrix x;
  bool full_rank = true;
};

/// Even trials: X = Q, T2 = Q T1 Q^{-1}. Odd trials: T1 = A ⊕ B, T2 = A ⊕ C
/// and X = I ⊕ 0, each side conjugated by its own random similarity.
inline ConstructedIntertwiner construct_intertwiner(std::size_t i, Rng& rng, const Matrix* fixed) {
  if (i % 2 == 0) {
    const Matrix t1 = fixed ? *fixed : sampling::random_c0(rng).matrix;
    const Matrix q = sampling::random_conditioned(rng, t1.rows(), sampling::uniform_real(rng, 1.0, 5.0));
    return {t1, q * t1 * q.inverse(), q, true};
  }
  sampling::ModelOptions opt;
  opt.max_dim = 3;
  const Matrix a = fixed ? *fixed : sampling::random_c0(rng, opt).matrix;
  const Matrix b = sampling::random_c0(rng, opt).matrix;
  const Matrix c = sampling::random_c0(rng, opt).matrix;
  const Matrix t1 = linalg::direct_sum(a, b);
  const Matrix t2 = linalg::direct_sum(a, c);
  Matrix x = Matrix::Zero(t2.rows(), t1.rows());
  x.topLeftCorner(a.rows(), a.rows()) = Matrix::Identity(a.rows(), a.rows());
  const Matrix p = sampling::random_conditioned(rng, t1.rows(), sampling::uniform_real(rng, 1.0, 3.0));
  const Matrix r = sampling::random_conditioned(rng, t2.rows(), sampling::uniform_real(rng, 1.0, 3.0));
  const Matrix pinv = p.inverse();
  return {p * t1 * pinv, r * t2 * r.inverse(), r * x * pinv, false};
}

inline VerificationReport duality_trial(std::size_t i, Rng& rng, const Matrix* fixed, std::size_t samples,
                                        std::uint64_t seed, const Tolerances& tol) {
  VerificationReport rep;
  const ConstructedIntertwiner c = construct_intertwiner(i, rng, fixed);
  const LatticeMapReport r = check_lattice_isomorphism(c.x, c.t1, c.t2, static_cast<int>(samples), seed, tol);
  const Json who = {{"full_rank", c.full_rank},
                    {"surjective", r.surjective_evidence},
                    {"injective", r.injective_evidence},
                    {"dual_surjective", r.dual_surjective_evidence},
                    {"dual_injective", r.dual_injective_evidence}};
  rep.note_metric("comparison_residual", r.max_residual);
  const double gap = std::abs(r.surjective_evidence - r.dual_injective_evidence);
  if ((r.surjective_evidence == 1.0) != (r.dual_injective_evidence == 1.0)) rep.add_violation({i, "duality-mismatch", gap, who});
  if (c.full_rank && (r.surjective_evidence < 1.0 || r.dual_injective_evidence < 1.0)) {
    rep.add_violation({i, "full-rank-evidence", 1.0 - std::min(r.surjective_evidence, r.dual_injective_evidence), who});
  }
  if (!c.full_rank && (r.surjective_evidence == 1.0 || r.dual_injective_evidence == 1.0)) {
    rep.add_violation({i, "rank-deficient-evidence", 1.0, who});
  }
  return rep;
}

// jordan-model ---------------------------------------------------------------

inline constexpr double kQuasiaffinityBound = 1e-7;

inline VerificationReport jordan_model_trial(std::size_t i, Rng& rng, std::uint64_t seed, const Tolerances& tol) {
  VerificationReport rep;
  const sampling::RandomC0 sample = sampling::random_c0(rng);
  const Matrix& t = sample.matrix;
  const Json who = {{"n", t.rows()}, {"expected", io::to_json(sample.model)}};
  JordanModelResult r;
  try {
    r = jordan_model_certified(t, seed, tol);
  } catch (const VerificationFailure& e) {
    rep.add_violation({i, "certificate", 1.0, {{"n", t.rows()}, {"error", e.what()}}});
    return rep;
  }
  const auto& th = r.model.thetas();
  for (std::size_t j = 0; j + 1 < th.size(); ++j) {
    if (!divides(th[j + 1], th[j])) rep.add_violation({i, "divisibility-chain", 1.0, who});
  }
  if (th.empty() || !equiv_within(th.front(), minimal_function(t), 1e-6)) rep.add_violation({i, "minimal-function", 1.0, who});
  const double cert = std::max(r.certificate.forward_residual, r.certificate.backward_residual);
  rep.note_metric("quasiaffinity_residual", cert);
  if (cert > kQuasiaffinityBound) rep.add_violation({i, "quasiaffinity-residual", cert, who});
  if (!models_equiv(r.model, sample.model, 1e-6)) rep.add_violation({i, "model-mismatch", 1.0, who});

  const double kappa = std::min(10.0, 0.999 / std::max(linalg::op_norm(t), 1e-3));
  const Matrix q = sampling::random_conditioned(rng, t.rows(), sampling::uniform_real(rng, 1.0, std::max(1.0, kappa)));
  const Matrix conj = q * t * q.inverse();
  try {
    if (!models_equiv(jordan_model(conj, seed + 1, tol), r.model, 1e-6)) rep.add_violation({i, "similarity-invariance", 1.0, who});
  } catch (const Error& e) {
    rep.add_violation({i, "similarity-invariance", 1.0, {{"n", t.rows()}, {"error", e.what()}}});
  }
  return rep;
}

// driver ---------------------------------------------------------------------

inline VerificationReport finish(std::vector<VerificationReport> parts, const SuiteConfig& cfg) {
  VerificationReport out;
  out.suite = cfg.suite;
  out.seed = cfg.seed;
  out.trials = cfg.trials;
  for (const auto& p : parts) out.merge(p);
  out.config = cfg.to_json();
  return out;
}

// Seed for the inner verifier of trial i, decorrelated from neighbouring trials.
inline std::uint64_t inner_seed(std::uint64_t seed, std::size_t i) {
  return (seed + i + 1) * 0x9e3779b97f4a7c15ULL;
}

inline std::vector<Matrix> load_inputs(const SuiteConfig& cfg) {
  std::vector<Matrix> out;
  for (const auto& path : cfg.inputs) out.push_back(io::matrix_from_json(io::read_json_file(path)));
  return out;
}

}  // namespace suites

/// Runs a catalogued suite (or "jordan-model"); trial i uses seed + i.
inline VerificationReport run_suite(const SuiteConfig& cfg) {
  using namespace suites;
  if (cfg.trials == 0) throw InputError("trials must be positive");
  const std::vector<Matrix> inputs = load_inputs(cfg);
  const std::size_t triples =
      cfg.triples > 0 ? cfg.triples : (cfg.suite == "jordan-model" ? 0 : suite_info(cfg.suite).default_triples);
  const Tolerances& tol = cfg.tol;
  auto simple = [&](auto trial) {
    if (!inputs.empty()) throw InputError("suite " + cfg.suite + " takes no input files");
    return finish(parallel_map(cfg.trials, [&](std::size_t i) {
                    Rng rng(cfg.seed + i);
                    return trial(i, rng, tol);
                  }),
                  cfg);
  };
  const std::string& s = cfg.suite;
  if (s == "lattice-laws") return simple(lattice_laws_trial);
  if (s == "prop14") return simple(prop14_trial);
  if (s == "propq-meetjoin") return simple(propq_trial);
  if (s == "distributive") return simple(distributive_trial);
  if (s == "oracle-latmatch") return simple(oracle_trial);
  if (s == "jordan-model") {
    if (!inputs.empty()) throw InputError("suite jordan-model takes no input files");
    return finish(parallel_map(cfg.trials, [&](std::size_t i) {
                    Rng rng(cfg.seed + i);
                    return jordan_model_trial(i, rng, inner_seed(cfg.seed, i), tol);
                  }),
                  cfg);
  }
  if (s == "modular-thm97" && !inputs.empty()) {
    // trials count triples on each supplied matrix
    std::vector<VerificationReport> parts;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      VerificationReport sub = theorem97_verifier(inputs[k], cfg.trials, cfg.seed, tol);
      for (auto& v : sub.violations) v.witness["input"] = k;
      parts.push_back(std::move(sub));
    }
    return finish(std::move(parts), cfg);
  }
  if (inputs.size() > 1) throw InputError("suite " + s + " takes at most one input matrix");
  const Matrix* fixed = inputs.empty() ? nullptr : &inputs.front();
  if (fixed && !detail::is_c0_matrix(*fixed)) throw InputError("input matrix must be a C0 contraction");
  auto operator_suite = [&](auto trial) {
    return finish(parallel_map(cfg.trials, [&](std::size_t i) {
                    Rng rng(cfg.seed + i);
                    return trial(i, rng);
                  }),
                  cfg);
  };
  if (s == "modular-thm97") {
    return operator_suite([&](std::size_t i, Rng& rng) { return thm97_trial(i, rng, triples, inner_seed(cfg.seed, i), tol); });
  }
  if (s == "x3-transfer") {
    return operator_suite([&](std::size_t i, Rng& rng) { return x3_trial(i, rng, fixed, triples, inner_seed(cfg.seed, i), tol); });
  }
  if (s == "duality") {
    return operator_suite([&](std::size_t i, Rng& rng) { return duality_trial(i, rng, fixed, triples, inner_seed(cfg.seed, i), tol); });
  }
  if (s == "calculus") {
    return operator_suite([&](std::size_t i, Rng& rng) { return calculus_trial(i, rng, fixed, tol); });
  }
  throw InputError("unknown suite: " + s);
}

}  // namespace c0lat
