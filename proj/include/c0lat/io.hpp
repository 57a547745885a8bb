#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "c0lat/blaschke.hpp"
#include "c0lat/calculus.hpp"
#include "c0lat/error.hpp"
#include "c0lat/jordan.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/modelspace.hpp"
#include "c0lat/report.hpp"
#include "c0lat/subspace.hpp"

namespace c0lat::io {

namespace detail {

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string("expected a number for ") + what);
  return j.get<double>();
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Json complex_pair(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex parse_pair(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError("complex entries are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

inline Complex parse_re_im(const Json& j) {
  return {number(field(j, "re"), "re"), j.contains("im") ? number(j.at("im"), "im") : 0.0};
}

}  // namespace detail

// Blaschke products --------------------------------------------------------

inline Json to_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (const auto& z : b.zeros()) zeros.push_back({{"re", z.point.real()}, {"im", z.point.imag()}, {"mult", z.mult}});
  return {{"zeros", zeros}, {"constant", {{"re", b.constant().real()}, {"im", b.constant().imag()}}}};
}

/// "mult" defaults to 1 and "constant" to 1. Validation errors become InputError.
inline BlaschkeProduct blaschke_from_json(const Json& j) {
  std::vector<BlaschkeProduct::Zero> zs;
  const Json& zeros = detail::field(j, "zeros");
  if (!zeros.is_array()) throw InputError("\"zeros\" must be an array");
  for (const auto& z : zeros) {
    int mult = 1;
    if (z.contains("mult")) {
      if (!z.at("mult").is_number_integer()) throw InputError("\"mult\" must be an integer");
      mult = z.at("mult").get<int>();
    }
    zs.push_back({detail::parse_re_im(z), mult});
  }
  const Complex c = j.contains("constant") ? detail::parse_re_im(j.at("constant")) : Complex(1.0);
  try {
    return BlaschkeProduct(std::move(zs), c);
  } catch (const CapExceededError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

// Matrices -----------------------------------------------------------------

inline Json matrix_entries(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(detail::complex_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix parse_entries(const Json& rows, Eigen::Index expect_rows = -1, Eigen::Index expect_cols = -1) {
  if (!rows.is_array()) throw InputError("matrix entries must be an array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? std::max<Eigen::Index>(expect_cols, 0) : static_cast<Eigen::Index>(rows[0].size());
  if ((expect_rows >= 0 && r != expect_rows) || (expect_cols >= 0 && c != expect_cols)) {
    throw InputError("matrix entries disagree with the declared shape");
  }
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) throw InputError("ragged matrix rows");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = detail::parse_pair(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

inline Json to_json(const Matrix& m) { return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", matrix_entries(m)}}; }

/// Accepts {"rows","cols","entries"}, a ModelOperator object, or a bare entries array.
inline Matrix matrix_from_json(const Json& j) {
  if (j.is_array()) return parse_entries(j);
  if (j.is_object() && j.contains("matrix")) return parse_entries(j.at("matrix"));
  const Json& rows = detail::field(j, "rows");
  const Json& cols = detail::field(j, "cols");
  if (!rows.is_number_integer() || !cols.is_number_integer()) throw InputError("\"rows\" and \"cols\" must be integers");
  return parse_entries(detail::field(j, "entries"), rows.get<Eigen::Index>(), cols.get<Eigen::Index>());
}

// Model operators ----------------------------------------------------------

inline Json to_json(const ModelOperator& op) { return {{"theta", to_json(op.theta)}, {"matrix", matrix_entries(op.matrix)}}; }

inline ModelOperator model_operator_from_json(const Json& j) {
  return {blaschke_from_json(detail::field(j, "theta")), parse_entries(detail::field(j, "matrix"))};
}

// Subspaces ----------------------------------------------------------------

inline Json to_json(const Subspace& s) {
  Json cols = Json::array();
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    Json col = Json::array();
    for (Eigen::Index i = 0; i < s.ambient_dim(); ++i) col.push_back(detail::complex_pair(s.basis()(i, k)));
    cols.push_back(std::move(col));
  }
  return {{"ambient", s.ambient_dim()}, {"basis", cols}};
}

/// Basis columns need not be orthonormal; they are re-orthonormalized.
inline Subspace subspace_from_json(const Json& j) {
  const Json& amb = detail::field(j, "ambient");
  if (!amb.is_number_integer() || amb.get<long long>() < 0) throw InputError("\"ambient\" must be a non-negative integer");
  const auto n = amb.get<Eigen::Index>();
  const Json& cols = detail::field(j, "basis");
  if (!cols.is_array()) throw InputError("\"basis\" must be an array of columns");
  Matrix b(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (!cols[k].is_array() || static_cast<Eigen::Index>(cols[k].size()) != n) throw InputError("basis column length");
    for (Eigen::Index i = 0; i < n; ++i) b(i, static_cast<Eigen::Index>(k)) = detail::parse_pair(cols[k][static_cast<std::size_t>(i)]);
  }
  return Subspace::span(b);
}

// Certificates and models --------------------------------------------------

inline Json to_json(const C0Certificate& c) {
  Json j = {{"is_c0", c.is_c0}, {"spectral_radius", c.spectral_radius}, {"annihilation_residual", c.annihilation_residual}};
  j["minimal_function"] = c.minimal_function ? to_json(*c.minimal_function) : Json(nullptr);
  return j;
}

inline Json to_json(const JordanModel& m) {
  Json thetas = Json::array();
  for (const auto& t : m.thetas()) thetas.push_back(to_json(t));
  return {{"thetas", thetas}};
}

inline JordanModel jordan_model_from_json(const Json& j) {
  std::vector<BlaschkeProduct> thetas;
  const Json& arr = detail::field(j, "thetas");
  if (!arr.is_array()) throw InputError("\"thetas\" must be an array");
  for (const auto& t : arr) thetas.push_back(blaschke_from_json(t));
  try {
    return JordanModel(std::move(thetas));
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
}

// Files --------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace c0lat::io
