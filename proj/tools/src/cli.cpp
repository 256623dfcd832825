#include "pspectral_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pspectral/critical_set.hpp"
#include "pspectral/eigen_bounds.hpp"
#include "pspectral/emit.hpp"
#include "pspectral/error.hpp"
#include "pspectral/frequency.hpp"
#include "pspectral/model_manifold.hpp"
#include "pspectral/ode_model.hpp"

namespace pspectral::cli {

namespace {

// A list flag takes one comma separated value per occurrence, so a following
// subcommand name is never swallowed.
template <typename T>
CLI::Option* list_option(CLI::App* app, const std::string& name,
                         std::vector<T>& target, const std::string& desc) {
  return app->add_option(name, target, desc)
      ->delimiter(',')
      ->allow_extra_args(false)
      ->capture_default_str();
}

struct Common {
  std::string format = "csv";
  std::string output;
  unsigned seed = 0;
};

struct BoundArgs {
  std::vector<double> p{2.0}, n{2.0}, k{0.0}, d{1.0};
};

struct ProfileArgs {
  std::string family = "flat0";
  std::vector<double> p{2.0}, n{2.0}, k{0.0}, lambda{1.0}, a{0.0};
  double t_max = 0.0;
  bool trajectory = false;
};

struct ManifoldArgs {
  std::string warping = "euclid";
  int n = 2;
  double k = -1.0;
  double r0 = 0.0;
  std::string table;
  double p = 2.0;
  double r1 = 1.0, r2 = 2.0;
  double r_bar = 1.0, t = 1.0;
  std::string mode = "AMp";
  std::string f = "const:1";
  double gap_factor = 1.0;
  std::vector<double> radii{1, 2, 4, 8, 16, 32};
};

struct FrequencyArgs {
  std::string poly_file;
  std::string poly_json;
  std::string builtin;
  int dim = 2;
  std::vector<double> x;
  std::vector<double> radii{0.1, 0.25, 0.5, 0.75, 1.0};
  std::string quadrature = "auto";
  std::string method = "auto";
  double r = 1.0;
  std::vector<double> minkowski_radii{0.02, 0.05, 0.1};
  std::vector<double> lo, hi;
  double h = 0.01;
  double eta = 0.5;
  int k = 0;
  double gamma = 0.5;
};

struct WitnessArgs {
  std::vector<double> p{2.0}, n{3.0}, k{-1.0}, d{2.0};
  std::vector<int> i{10};
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Warping make_warping(const ManifoldArgs& m) {
  if (m.warping == "euclid") return Warping::euclid(m.n);
  if (m.warping == "hyperbolic") return Warping::hyperbolic(m.n, m.k);
  if (m.warping == "exp_surface") return Warping::exp_surface(m.r0);
  if (m.warping == "table") {
    if (m.table.empty()) throw DomainError("--warping table needs --table FILE");
    std::istringstream in(read_file(m.table));
    std::string line;
    std::vector<double> t, s;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw DomainError("table row needs t,sigma");
      try {
        t.push_back(std::stod(line.substr(0, comma)));
        s.push_back(std::stod(line.substr(comma + 1)));
      } catch (const std::exception&) {
        throw DomainError("bad table row '" + line + "'");
      }
    }
    return Warping::table(m.n, std::move(t), std::move(s));
  }
  throw DomainError("unknown warping '" + m.warping + "'");
}

// "const:c", "power:c,a" (c r^a), "exp:c,b" (c e^{b r})
std::function<double(double)> parse_profile(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("bad --f '" + text + "'");
  const std::string kind = text.substr(0, colon);
  std::vector<double> v;
  std::istringstream in(text.substr(colon + 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw DomainError("bad --f '" + text + "'");
    }
  }
  if (kind == "const" && v.size() == 1) {
    const double c = v[0];
    return [c](double) { return c; };
  }
  if (kind == "power" && v.size() == 2) {
    const double c = v[0], a = v[1];
    return [c, a](double r) { return c * std::pow(r, a); };
  }
  if (kind == "exp" && v.size() == 2) {
    const double c = v[0], b = v[1];
    return [c, b](double r) { return c * std::exp(b * r); };
  }
  throw DomainError("bad --f '" + text + "'");
}

HarmonicPolynomial make_polynomial(const FrequencyArgs& f) {
  const int given = !f.poly_file.empty() + !f.poly_json.empty() + !f.builtin.empty();
  if (given != 1) {
    throw DomainError("give exactly one of --poly, --poly-json, --builtin");
  }
  if (!f.poly_file.empty()) return HarmonicPolynomial(polynomial_from_json(read_file(f.poly_file)));
  if (!f.poly_json.empty()) return HarmonicPolynomial(polynomial_from_json(f.poly_json));
  // re:d or im:d
  const auto colon = f.builtin.find(':');
  if (colon == std::string::npos) throw DomainError("bad --builtin '" + f.builtin + "'");
  int d = 0;
  try {
    d = std::stoi(f.builtin.substr(colon + 1));
  } catch (const std::exception&) {
    throw DomainError("bad --builtin '" + f.builtin + "'");
  }
  const std::string kind = f.builtin.substr(0, colon);
  if (kind == "re") return HarmonicPolynomial(real_power(f.dim, d));
  if (kind == "im") return HarmonicPolynomial(imag_power(f.dim, d));
  throw DomainError("bad --builtin '" + f.builtin + "'");
}

std::vector<double> center_or_origin(const std::vector<double>& x, int n) {
  if (x.empty()) return std::vector<double>(n, 0.0);
  if (static_cast<int>(x.size()) != n) throw DomainError("--x has wrong dimension");
  return x;
}

QuadratureMode parse_quadrature(const std::string& s) {
  if (s == "auto") return QuadratureMode::Auto;
  if (s == "product") return QuadratureMode::Product;
  if (s == "moments") return QuadratureMode::Moments;
  throw DomainError("unknown quadrature '" + s + "'");
}

SymmetryMethod parse_method(const std::string& s) {
  if (s == "auto") return SymmetryMethod::Auto;
  if (s == "fourier") return SymmetryMethod::Fourier;
  if (s == "homogeneous") return SymmetryMethod::Homogeneous;
  throw DomainError("unknown symmetry method '" + s + "'");
}

template <typename T>
void require_nonempty(const std::vector<T>& v, const char* name) {
  if (v.empty()) throw DomainError(std::string(name) + " must not be empty");
}

std::string run_bound(const BoundArgs& b, Format fmt) {
  for (const auto* v : {&b.p, &b.n, &b.k, &b.d}) require_nonempty(*v, "bound ranges");
  struct Cell { double p, n, k, d; };
  std::vector<Cell> cells;
  for (double p : b.p)
    for (double n : b.n)
      for (double k : b.k)
        for (double d : b.d) cells.push_back({p, n, k, d});
  std::vector<SharpGapResult> rows(cells.size());
  parallel_for(cells.size(), thread_limit(), [&](std::size_t i) {
    rows[i] = sharp_gap_report(cells[i].p, cells[i].n, cells[i].k, cells[i].d);
  });
  return emit(rows, fmt);
}

std::string run_profile(const ProfileArgs& a, Format fmt) {
  for (const auto* v : {&a.p, &a.n, &a.k, &a.lambda, &a.a}) {
    require_nonempty(*v, "profile ranges");
  }
  const ModelFamily family = parse_family(a.family);
  std::vector<ModelProblem> problems;
  for (double p : a.p)
    for (double n : a.n)
      for (double k : a.k)
        for (double l : a.lambda)
          for (double s : a.a) problems.push_back({p, n, k, l, family, s});
  for (const auto& pr : problems) pr.validate();
  std::optional<double> t_max;
  if (a.t_max > 0.0) t_max = a.t_max;

  if (a.trajectory) {
    if (problems.size() != 1) throw DomainError("--trajectory needs a single instance");
    const auto r = profile(problems.front(), t_max);
    return emit(*r.trajectory, fmt);
  }
  std::vector<ProfileRow> rows(problems.size());
  parallel_for(problems.size(), thread_limit(), [&](std::size_t i) {
    rows[i] = {problems[i], profile(problems[i], t_max)};
  });
  if (rows.size() == 1 && fmt == Format::Json) return emit(rows.front().result, fmt);
  return emit(rows, fmt);
}

std::string run_witness(const WitnessArgs& w, Format fmt) {
  require_nonempty(w.p, "--p");
  require_nonempty(w.n, "--n");
  require_nonempty(w.k, "--k");
  require_nonempty(w.d, "--d");
  require_nonempty(w.i, "--i");
  struct Cell { double p, n, k, d; int i; };
  std::vector<Cell> cells;
  for (double p : w.p)
    for (double n : w.n)
      for (double k : w.k)
        for (double d : w.d)
          for (int i : w.i) cells.push_back({p, n, k, d, i});
  std::vector<WitnessReport> rows(cells.size());
  parallel_for(cells.size(), thread_limit(), [&](std::size_t j) {
    const auto& c = cells[j];
    rows[j] = sharpness_witness(c.p, c.n, c.k, c.d, c.i);
  });
  return emit(rows, fmt);
}

void write_output(const std::string& text, const Common& c, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + c.output + "'");
  f << text;
}

void diagnostic(std::ostream& err, const char* kind, const std::string& msg) {
  err << "{\"error\": \"" << kind << "\", \"message\": \"";
  for (char ch : msg) {
    if (ch == '"' || ch == '\\') err << '\\';
    err << (ch == '\n' ? ' ' : ch);
  }
  err << "\"}\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sharp p-Laplacian spectral gaps, model manifold potential theory "
               "and frequency analysis of harmonic polynomials",
               "pspectral"};
  app.set_config("--config", "", "TOML/INI configuration file; flags win");
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "csv or json")->capture_default_str();
  app.add_option("--output,-o", common.output, "output file (default stdout)");
  app.add_option("--seed", common.seed, "seed for randomized steps")->capture_default_str();

  BoundArgs bound;
  auto* sb = app.add_subcommand("bound", "sharp spectral gap sweeps");
  list_option(sb, "--p", bound.p, "exponents");
  list_option(sb, "--n", bound.n, "dimensions");
  list_option(sb, "--k", bound.k, "curvature lower bounds (<= 0)");
  list_option(sb, "--d", bound.d, "diameters");

  ProfileArgs prof;
  auto* sp = app.add_subcommand("profile", "first crest b, diameter delta and maximum m");
  sp->add_option("--family", prof.family,
                 "flat0, flat-radial, hyp-sinh, hyp-exp or hyp-cosh")
      ->capture_default_str();
  list_option(sp, "--p", prof.p, "exponents");
  list_option(sp, "--n", prof.n, "dimensions");
  list_option(sp, "--k", prof.k, "curvatures");
  list_option(sp, "--lambda", prof.lambda, "eigen-parameters");
  list_option(sp, "--a", prof.a, "start points");
  sp->add_option("--t-max", prof.t_max, "search horizon (0 selects the default)");
  sp->add_flag("--trajectory", prof.trajectory, "emit the sampled trajectory");

  ManifoldArgs man;
  auto* sm = app.add_subcommand("manifold", "model manifold potential theory");
  sm->require_subcommand(1);
  sm->add_option("--warping", man.warping, "euclid, hyperbolic, exp_surface or table")
      ->capture_default_str();
  sm->add_option("--n", man.n, "dimension")->capture_default_str();
  sm->add_option("--k", man.k, "curvature for hyperbolic")->capture_default_str();
  sm->add_option("--r0", man.r0, "domain start for exp_surface")->capture_default_str();
  sm->add_option("--table", man.table, "CSV file of t,sigma samples");
  sm->add_option("--p", man.p, "exponent")->capture_default_str();
  auto* mcap = sm->add_subcommand("capacity", "condenser capacity and bounds");
  mcap->add_option("--r1", man.r1)->capture_default_str();
  mcap->add_option("--r2", man.r2)->capture_default_str();
  auto* mev = sm->add_subcommand("evans", "Evans potential level and capacity");
  mev->add_option("--r-bar", man.r_bar)->capture_default_str();
  mev->add_option("--t", man.t)->capture_default_str();
  auto* mcut = sm->add_subcommand("cutoff", "cutoff energies");
  mcut->add_option("--r1", man.r1)->capture_default_str();
  mcut->add_option("--r2", man.r2)->capture_default_str();
  auto* mpar = sm->add_subcommand("parabolic", "p-parabolicity test");
  auto* msto = sm->add_subcommand("stokes", "annulus conditions for Stokes theorems");
  msto->add_option("--mode", man.mode, "AMp or VMp")->capture_default_str();
  msto->add_option("--f", man.f, "const:c, power:c,a or exp:c,b")->capture_default_str();
  msto->add_option("--gap-factor", man.gap_factor, "g(R) = factor R for VMp")
      ->capture_default_str();
  list_option(msto, "--radii", man.radii, "radii R");

  FrequencyArgs fq;
  auto* sf = app.add_subcommand("frequency", "frequency analysis of harmonic polynomials");
  sf->require_subcommand(1);
  sf->add_option("--poly", fq.poly_file, "polynomial JSON file");
  sf->add_option("--poly-json", fq.poly_json, "polynomial JSON text");
  sf->add_option("--builtin", fq.builtin, "re:d or im:d, the parts of (x1 + i x2)^d");
  sf->add_option("--dim", fq.dim, "dimension for --builtin")->capture_default_str();
  auto* fcur = sf->add_subcommand("curve", "H, D, N and Nbar over radii");
  list_option(fcur, "--x", fq.x, "center");
  list_option(fcur, "--radii", fq.radii, "radii");
  fcur->add_option("--quadrature", fq.quadrature, "auto, product or moments")
      ->capture_default_str();
  auto* fsym = sf->add_subcommand("symmetry", "distance to homogeneous harmonics");
  list_option(fsym, "--x", fq.x, "center");
  fsym->add_option("--r", fq.r, "scale")->capture_default_str();
  fsym->add_option("--method", fq.method, "auto, fourier or homogeneous")
      ->capture_default_str();
  auto* fmin = sf->add_subcommand("minkowski", "tube volumes of the critical set");
  list_option(fmin, "--radii", fq.minkowski_radii, "tube radii");
  auto* fcr = sf->add_subcommand("critical", "certified critical cells and points");
  list_option(fcr, "--lo", fq.lo, "box lower corner");
  list_option(fcr, "--hi", fq.hi, "box upper corner");
  fcr->add_option("--pitch", fq.h, "cell pitch")->capture_default_str();
  auto* fst = sf->add_subcommand("stratum", "effective stratum membership");
  list_option(fst, "--x", fq.x, "point");
  fst->add_option("--eta", fq.eta)->capture_default_str();
  fst->add_option("--r", fq.r)->capture_default_str();
  fst->add_option("--k", fq.k)->capture_default_str();
  fst->add_option("--gamma", fq.gamma)->capture_default_str();

  WitnessArgs wit;
  auto* sw = app.add_subcommand("witness", "warped-product sharpness witnesses");
  list_option(sw, "--p", wit.p, "exponents");
  list_option(sw, "--n", wit.n, "dimensions");
  list_option(sw, "--k", wit.k, "curvatures (< 0)");
  list_option(sw, "--d", wit.d, "diameters");
  list_option(sw, "--i", wit.i, "sequence indices");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "config", e.what());
    return kExitConfig;
  }

  try {
    const Format fmt = parse_format(common.format);
    std::string text;
    if (*sb) {
      text = run_bound(bound, fmt);
    } else if (*sp) {
      text = run_profile(prof, fmt);
    } else if (*sw) {
      text = run_witness(wit, fmt);
    } else if (*sm) {
      const Warping w = make_warping(man);
      if (*mcap) {
        text = emit(capacity(w, man.p, man.r1, man.r2), fmt);
      } else if (*mev) {
        text = emit(evans(w, man.p, man.r_bar, man.t), fmt);
      } else if (*mcut) {
        text = emit(cutoff_energy(w, man.p, man.r1, man.r2), fmt);
      } else if (*mpar) {
        text = emit(parabolicity_report(w, man.p), fmt);
      } else if (*msto) {
        StokesMode mode;
        if (man.mode == "AMp") {
          mode = StokesMode::AMp;
        } else if (man.mode == "VMp") {
          mode = StokesMode::VMp;
        } else {
          throw DomainError("unknown Stokes mode '" + man.mode + "'");
        }
        const double factor = man.gap_factor;
        text = emit(stokes_condition(w, man.p, parse_profile(man.f), mode, man.radii,
                                     [factor](double r) { return factor * r; }),
                    fmt);
      }
    } else if (*sf) {
      const HarmonicPolynomial u = make_polynomial(fq);
      const int n = u.dim();
      if (*fcur) {
        text = emit(frequency_curve(u, center_or_origin(fq.x, n), fq.radii,
                                    parse_quadrature(fq.quadrature)),
                    fmt);
      } else if (*fsym) {
        text = emit(symmetry_measure(u, center_or_origin(fq.x, n), fq.r,
                                     parse_method(fq.method)),
                    fmt);
      } else if (*fmin) {
        text = emit(minkowski_report(u.poly(), fq.minkowski_radii), fmt);
      } else if (*fcr) {
        Box box{fq.lo.empty() ? std::vector<double>(n, -0.5) : fq.lo,
                fq.hi.empty() ? std::vector<double>(n, 0.5) : fq.hi};
        text = emit(critical_set(u.poly(), box, fq.h), fmt);
      } else if (*fst) {
        text = emit(stratum_membership(u, center_or_origin(fq.x, n), fq.eta, fq.r,
                                       fq.k, fq.gamma),
                    fmt);
      }
    }
    write_output(text, common, out);
  } catch (const NumericalError& e) {
    diagnostic(err, "numerical", e.what());
    return kExitNumerical;
  } catch (const std::logic_error& e) {
    // DomainError, PreconditionError and std::invalid_argument all derive
    // from logic_error: bad parameters.
    diagnostic(err, "config", e.what());
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    diagnostic(err, "numerical", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pspectral::cli
