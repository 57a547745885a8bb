#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c0lat/c0lat.hpp"

using namespace c0lat;

namespace {

struct Output {
  bool json = false;
  std::string path;

  void add_to(CLI::App* app) {
    app->add_flag("--json", json, "Emit JSON instead of text");
    app->add_option("--out", path, "Write output to this file instead of stdout");
  }

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
  }

  void emit_json(const Json& j) const { emit(stable_dump(j) + "\n"); }
};

Json load(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return io::parse_json_text(arg);
  return io::read_json_file(arg);
}

BlaschkeProduct load_blaschke(const std::string& arg) { return io::blaschke_from_json(load(arg)); }

Matrix load_matrix(const std::string& arg) { return io::matrix_from_json(load(arg)); }

std::string format_entry(Complex c) {
  const double chop = 1e-12;
  const double re = std::abs(c.real()) < chop ? 0.0 : c.real();
  const double im = std::abs(c.imag()) < chop ? 0.0 : c.imag();
  char buf[64];
  if (im == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12g", re == 0.0 ? 0.0 : re);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re == 0.0 ? 0.0 : re, im);
  }
  return buf;
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? "," : "") + format_entry(m(i, j));
    out += "]";
  }
  return out + "]\n";
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects name=value, got " + item);
    try {
      std::size_t used = 0;
      const std::string num = item.substr(eq + 1);
      const double v = std::stod(num, &used);
      if (used != num.size()) throw InputError("bad tolerance value in " + item);
      out[item.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw InputError("bad tolerance value in " + item);
    }
  }
  return out;
}

std::string suite_help() {
  std::string s = "Suites (each checks one statement):\n";
  for (const auto& info : suite_catalog()) s += "  " + info.name + "\n      " + info.statement + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c0lat: lattices of invariant subspaces of C0 matrices"};
  app.require_subcommand(1);
  int exit_code = 0;

  // inner ------------------------------------------------------------------
  auto* inner = app.add_subcommand("inner", "Blaschke product arithmetic");
  inner->require_subcommand(1);
  Output inner_out;
  std::string a_arg, b_arg;
  std::string z_arg;
  for (const char* name : {"gcd", "lcm", "divides"}) {
    auto* sub = inner->add_subcommand(name, std::string(name) + " of two Blaschke products (JSON files)");
    sub->add_option("a", a_arg, "First product")->required();
    sub->add_option("b", b_arg, "Second product")->required();
    inner_out.add_to(sub);
    sub->callback([&, op = std::string(name)] {
      const BlaschkeProduct a = load_blaschke(a_arg);
      const BlaschkeProduct b = load_blaschke(b_arg);
      if (op == "divides") {
        const bool d = divides(a, b);
        inner_out.json ? inner_out.emit_json({{"divides", d}}) : inner_out.emit(d ? "true\n" : "false\n");
        return;
      }
      const BlaschkeProduct r = op == "gcd" ? gcd(a, b) : lcm(a, b);
      inner_out.json ? inner_out.emit_json(io::to_json(r)) : inner_out.emit(to_string(r) + "\n");
    });
  }
  auto* eval = inner->add_subcommand("eval", "Evaluate a Blaschke product at a point of the closed disk");
  eval->add_option("a", a_arg, "Product")->required();
  eval->add_option("--at", z_arg, "Point as re or re,im")->required();
  inner_out.add_to(eval);
  eval->callback([&] {
    const BlaschkeProduct a = load_blaschke(a_arg);
    Complex z;
    try {
      const auto comma = z_arg.find(',');
      z = comma == std::string::npos ? Complex(std::stod(z_arg), 0.0)
                                     : Complex(std::stod(z_arg.substr(0, comma)), std::stod(z_arg.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw InputError("bad point " + z_arg);
    }
    const Complex v = evaluate(a, z);
    inner_out.json ? inner_out.emit_json({{"re", v.real()}, {"im", v.imag()}}) : inner_out.emit(format_entry(v) + "\n");
  });

  // model ------------------------------------------------------------------
  auto* model = app.add_subcommand("model", "Model spaces and compressed shifts");
  model->require_subcommand(1);
  Output model_out;
  std::string theta_arg, phi_arg;
  auto* shift = model->add_subcommand("shift", "Matrix of S(theta) in the Takenaka-Malmquist basis");
  shift->add_option("--theta", theta_arg, "Blaschke product")->required();
  model_out.add_to(shift);
  shift->callback([&] {
    const ModelOperator op = compressed_shift(load_blaschke(theta_arg));
    model_out.json ? model_out.emit_json(io::to_json(op)) : model_out.emit(format_matrix(op.matrix));
  });
  auto* latenum = model->add_subcommand("lat-enum", "All invariant subspaces of S(theta), one per divisor");
  latenum->add_option("--theta", theta_arg, "Blaschke product")->required();
  model_out.add_to(latenum);
  latenum->callback([&] {
    const auto entries = enumerate_lattice(load_blaschke(theta_arg));
    if (model_out.json) {
      Json arr = Json::array();
      for (const auto& e : entries) arr.push_back({{"divisor", io::to_json(e.divisor)}, {"subspace", io::to_json(e.subspace)}});
      model_out.emit_json(arr);
      return;
    }
    std::string text;
    for (const auto& e : entries) text += to_string(e.divisor) + "  dim " + std::to_string(e.subspace.dim()) + "\n";
    model_out.emit(text);
  });
  auto* divsub = model->add_subcommand("divisor-subspace", "The subspace phi H(theta/phi) in coordinates");
  divsub->add_option("--theta", theta_arg, "Blaschke product")->required();
  divsub->add_option("--phi", phi_arg, "Divisor of theta")->required();
  model_out.add_to(divsub);
  divsub->callback([&] {
    const Subspace s = divisor_subspace(load_blaschke(theta_arg), load_blaschke(phi_arg));
    model_out.json ? model_out.emit_json(io::to_json(s))
                   : model_out.emit("dim " + std::to_string(s.dim()) + "\n" + format_matrix(s.basis()));
  });

  // calc -------------------------------------------------------------------
  auto* calc = app.add_subcommand("calc", "Functional calculus for C0 matrices");
  calc->require_subcommand(1);
  Output calc_out;
  std::string matrix_arg, blaschke_arg;
  auto* minfun = calc->add_subcommand("minfun", "Minimal function of a C0 matrix");
  minfun->add_option("--matrix", matrix_arg, "Matrix JSON")->required();
  calc_out.add_to(minfun);
  minfun->callback([&] {
    const MinimalFunctionResult r = minimal_function_certified(load_matrix(matrix_arg));
    calc_out.json ? calc_out.emit_json(io::to_json(r.function)) : calc_out.emit(to_string(r.function) + "\n");
  });
  auto* apply = calc->add_subcommand("apply", "B(T) for a Blaschke product B");
  apply->add_option("--matrix", matrix_arg, "Matrix JSON")->required();
  apply->add_option("--blaschke", blaschke_arg, "Blaschke product")->required();
  calc_out.add_to(apply);
  apply->callback([&] {
    const ContractionMatrix t(load_matrix(matrix_arg));
    const Matrix r = apply_blaschke(t, load_blaschke(blaschke_arg));
    calc_out.json ? calc_out.emit_json(io::to_json(r)) : calc_out.emit(format_matrix(r));
  });
  auto* classify = calc->add_subcommand("classify", "C0 test with spectral radius and minimal function");
  classify->add_option("--matrix", matrix_arg, "Matrix JSON")->required();
  calc_out.add_to(classify);
  classify->callback([&] {
    const C0Certificate c = classify_c0(load_matrix(matrix_arg));
    if (calc_out.json) {
      calc_out.emit_json(io::to_json(c));
      return;
    }
    std::string text = std::string("C0: ") + (c.is_c0 ? "yes" : "no") + "\nspectral radius: " +
                       detail::format_double(c.spectral_radius) + "\n";
    if (c.minimal_function) text += "minimal function: " + to_string(*c.minimal_function) + "\n";
    calc_out.emit(text);
  });

  // jordan -----------------------------------------------------------------
  auto* jordan = app.add_subcommand("jordan", "Jordan models, quasisimilarity and intertwiners");
  jordan->require_subcommand(1);
  Output jordan_out;
  std::uint64_t jordan_seed = 0;
  std::string t1_arg, t2_arg;
  auto* jmodel = jordan->add_subcommand("model", "Jordan model of a C0 matrix");
  jmodel->add_option("--matrix", matrix_arg, "Matrix JSON")->required();
  jmodel->add_option("--seed", jordan_seed, "Seed for the certificate search");
  jordan_out.add_to(jmodel);
  jmodel->callback([&] {
    const JordanModel m = jordan_model(load_matrix(matrix_arg), jordan_seed);
    if (jordan_out.json) {
      jordan_out.emit_json(io::to_json(m));
      return;
    }
    std::string text;
    for (const auto& t : m.thetas()) text += to_string(t) + "\n";
    jordan_out.emit(text);
  });
  auto* quasisim = jordan->add_subcommand("quasisim", "Are two matrices quasisimilar");
  quasisim->add_option("t1", t1_arg, "First matrix")->required();
  quasisim->add_option("t2", t2_arg, "Second matrix")->required();
  quasisim->add_option("--seed", jordan_seed, "Seed for the rank search");
  jordan_out.add_to(quasisim);
  quasisim->callback([&] {
    const bool q = are_quasisimilar(load_matrix(t1_arg), load_matrix(t2_arg), jordan_seed);
    jordan_out.json ? jordan_out.emit_json({{"quasisimilar", q}}) : jordan_out.emit(q ? "true\n" : "false\n");
  });
  auto* intertwine = jordan->add_subcommand("intertwine", "Solution space of X T1 = T2 X");
  intertwine->add_option("t1", t1_arg, "First matrix")->required();
  intertwine->add_option("t2", t2_arg, "Second matrix")->required();
  intertwine->add_option("--seed", jordan_seed, "Seed for the rank search");
  jordan_out.add_to(intertwine);
  intertwine->callback([&] {
    const IntertwinerSpace s = intertwiner_space(load_matrix(t1_arg), load_matrix(t2_arg), jordan_seed);
    if (jordan_out.json) {
      Json basis = Json::array();
      for (const auto& x : s.basis) basis.push_back(io::to_json(x));
      jordan_out.emit_json({{"dimension", s.basis.size()}, {"max_rank", s.max_rank}, {"basis", basis}});
      return;
    }
    jordan_out.emit("dimension " + std::to_string(s.basis.size()) + "\nmax rank " + std::to_string(s.max_rank) + "\n");
  });

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  SuiteConfig cfg;
  Output verify_out;
  std::vector<std::string> tol_items;
  verify->add_option("suite", cfg.suite, "Suite name")->required();
  verify->add_option("inputs", cfg.inputs, "Matrix JSON files for the operator suites");
  verify->add_option("--seed", cfg.seed, "Base seed; trial i uses seed + i")->capture_default_str();
  verify->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  verify->add_option("--triples", cfg.triples, "Triples or samples per matrix (0 = suite default)")->capture_default_str();
  verify->add_option("--tol", tol_items, "Tolerance override name=value (equality, meet_angle, rank, invariance, intertwining)");
  verify_out.add_to(verify);
  verify->footer(suite_help());
  app.footer(suite_help());
  verify->callback([&] {
    cfg.tol.apply(parse_tolerances(tol_items));
    cfg.json = verify_out.json;
    (void)suite_info(cfg.suite);
    const VerificationReport rep = run_suite(cfg);
    verify_out.emit(report_render(rep, cfg.json ? RenderMode::json : RenderMode::text));
    exit_code = rep.passed ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "c0lat: verification failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "c0lat: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "c0lat: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
