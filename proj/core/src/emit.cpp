#include "pspectral/emit.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pspectral/error.hpp"

namespace pspectral {

using Json = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw DomainError("unsupported format '" + std::string(name) + "'");
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json num(const std::optional<double>& v) {
  return v ? num(*v) : Json(nullptr);
}

class Csv {
 public:
  explicit Csv(std::string_view header) { os_ << header << '\n'; }

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(fields), first = false), ...);
    os_ << '\n';
  }

  std::string str() const { return os_.str(); }

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }
  static std::string cell(std::string_view v) { return std::string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const std::optional<double>& v) {
    return v ? format_double(*v) : "";
  }
  std::ostringstream os_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const ProfileResult& r) {
  Json j;
  j["b"] = num(r.b);
  j["delta"] = num(r.delta);
  j["m"] = num(r.m);
  j["status"] = std::string(to_string(r.status));
  return j;
}

Json to_json(const SharpGapResult& r) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["k"] = r.k;
  j["d"] = r.d;
  j["lambda_bar"] = num(r.lambda_bar);
  j["alpha"] = num(r.alpha);
  j["iterations"] = r.iterations;
  return j;
}

Json to_json(const WitnessReport& r) {
  Json j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["k"] = r.k;
  j["d"] = r.d;
  j["i"] = r.i;
  j["diameter_bound"] = num(r.diameter_bound);
  j["lambda_bar"] = num(r.lambda_bar);
  j["alpha"] = num(r.alpha);
  j["ricci_lower"] = num(r.ricci_lower);
  j["ricci_radial_min"] = num(r.ricci_radial_min);
  j["ricci_fiber_min"] = num(r.ricci_fiber_min);
  j["ricci_ok"] = r.ricci_ok;
  j["convexity_left"] = num(r.convexity_left);
  j["convexity_right"] = num(r.convexity_right);
  j["convex_ok"] = r.convex_ok;
  return j;
}

Json array_of(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

std::string emit(const Trajectory& t, Format f) {
  if (f == Format::Csv) {
    Csv csv("t,w,v,phi,e");
    for (const auto& s : t.samples()) csv.row(s.t, s.w, s.v, s.phi, s.e);
    return csv.str();
  }
  Json j;
  j["status"] = t.status() == TrajectoryStatus::ReachedEvent ? "reached_event"
                                                             : "reached_tmax";
  Json samples = Json::array();
  for (const auto& s : t.samples()) {
    samples.push_back(Json{{"t", num(s.t)}, {"w", num(s.w)}, {"v", num(s.v)},
                           {"phi", num(s.phi)}, {"e", num(s.e)}});
  }
  j["samples"] = samples;
  return dump(j);
}

std::string emit(const ProfileResult& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("b,delta,m,status");
    csv.row(r.b, r.delta, r.m, to_string(r.status));
    return csv.str();
  }
  return dump(to_json(r));
}

std::string emit(const std::vector<ProfileRow>& rows, Format f) {
  if (f == Format::Csv) {
    Csv csv("family,p,n,k,lambda,a,b,delta,m,status");
    for (const auto& [pr, r] : rows) {
      csv.row(to_string(pr.family), pr.p, pr.n, pr.k, pr.lambda, pr.a, r.b,
              r.delta, r.m, to_string(r.status));
    }
    return csv.str();
  }
  Json a = Json::array();
  for (const auto& [pr, r] : rows) {
    Json j;
    j["family"] = std::string(to_string(pr.family));
    j["p"] = pr.p;
    j["n"] = pr.n;
    j["k"] = pr.k;
    j["lambda"] = pr.lambda;
    j["a"] = pr.a;
    for (auto& [key, value] : to_json(r).items()) j[key] = value;
    a.push_back(j);
  }
  return dump(a);
}

std::string emit(const SharpGapResult& r, Format f) {
  return emit(std::vector<SharpGapResult>{r}, f);
}

std::string emit(const std::vector<SharpGapResult>& rows, Format f) {
  if (f == Format::Csv) {
    Csv csv("p,n,k,d,lambda_bar");
    for (const auto& r : rows) csv.row(r.p, r.n, r.k, r.d, r.lambda_bar);
    return csv.str();
  }
  if (rows.size() == 1) return dump(to_json(rows.front()));
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return dump(a);
}

std::string emit(const WitnessReport& r, Format f) {
  return emit(std::vector<WitnessReport>{r}, f);
}

std::string emit(const std::vector<WitnessReport>& rows, Format f) {
  if (f == Format::Csv) {
    Csv csv("p,n,k,d,i,diameter_bound,lambda_bar,ricci_ok,convex_ok");
    for (const auto& r : rows) {
      csv.row(r.p, r.n, r.k, r.d, r.i, r.diameter_bound, r.lambda_bar,
              r.ricci_ok, r.convex_ok);
    }
    return csv.str();
  }
  if (rows.size() == 1) return dump(to_json(rows.front()));
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return dump(a);
}

std::string emit(const CapacityResult& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("exact,area_bound,volume_bound");
    csv.row(r.exact, r.area_bound, r.volume_bound);
    return csv.str();
  }
  return dump(Json{{"exact", num(r.exact)},
                   {"area_bound", num(r.area_bound)},
                   {"volume_bound", num(r.volume_bound)}});
}

std::string emit(const EvansResult& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("radius,cap,cap_quadrature");
    csv.row(r.radius, r.cap, r.cap_quadrature);
    return csv.str();
  }
  return dump(Json{{"radius", num(r.radius)},
                   {"cap", num(r.cap)},
                   {"cap_quadrature", num(r.cap_quadrature)}});
}

std::string emit(const CutoffEnergy& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("phi_energy,phi_energy_quadrature,xi_energy_bound");
    csv.row(r.phi_energy, r.phi_energy_quadrature, r.xi_energy_bound);
    return csv.str();
  }
  return dump(Json{{"phi_energy", num(r.phi_energy)},
                   {"phi_energy_quadrature", num(r.phi_energy_quadrature)},
                   {"xi_energy_bound", num(r.xi_energy_bound)}});
}

std::string emit(const ParabolicityReport& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("verdict,geometric_slope,log_slope");
    csv.row(to_string(r.verdict), r.geometric_slope, r.log_slope);
    return csv.str();
  }
  return dump(Json{{"verdict", std::string(to_string(r.verdict))},
                   {"geometric_slope", num(r.geometric_slope)},
                   {"log_slope", num(r.log_slope)},
                   {"horizons", array_of(r.horizons)},
                   {"increments", array_of(r.increments)}});
}

std::string emit(const StokesReport& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("R,q");
    for (std::size_t i = 0; i < r.q.size(); ++i) csv.row(r.radii[i], r.q[i]);
    return csv.str();
  }
  return dump(Json{{"mode", std::string(to_string(r.mode))},
                   {"verdict", std::string(to_string(r.verdict))},
                   {"tail_slope", num(r.tail_slope)},
                   {"radii", array_of(r.radii)},
                   {"q", array_of(r.q)}});
}

std::string emit(const FrequencyCurve& c, Format f) {
  if (f == Format::Csv) {
    Csv csv("r,H,D,N,Hbar,Nbar");
    for (const auto& v : c.values) csv.row(v.r, v.H, v.D, v.N, v.Hbar, v.Nbar);
    return csv.str();
  }
  Json rows = Json::array();
  for (const auto& v : c.values) {
    rows.push_back(Json{{"r", num(v.r)}, {"h", num(v.H)}, {"d", num(v.D)},
                        {"n", num(v.N)}, {"hbar", num(v.Hbar)},
                        {"nbar", num(v.Nbar)}});
  }
  return dump(Json{{"center", array_of(c.center)},
                   {"quadrature_degree", c.quadrature_degree},
                   {"max_violation_n", num(c.max_violation_N)},
                   {"max_violation_nbar", num(c.max_violation_Nbar)},
                   {"doubling_residual", num(c.doubling_residual)},
                   {"doubling_residual_rel", num(c.doubling_residual_rel)},
                   {"drops", array_of(c.drops)},
                   {"values", rows}});
}

std::string emit(const SymmetryReport& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("degree,distance");
    for (std::size_t i = 0; i < r.degree_distance.size(); ++i) {
      csv.row(static_cast<int>(i) + 1, r.degree_distance[i]);
    }
    return csv.str();
  }
  Json km = Json::array();
  for (const auto& [k, m] : r.k_measures) km.push_back(Json{{"k", k}, {"measure", num(m)}});
  return dump(Json{{"center", array_of(r.center)},
                   {"scale", num(r.scale)},
                   {"measure", num(r.measure)},
                   {"best_degree", r.best_degree},
                   {"best_polynomial", Json::parse(polynomial_to_json(r.best_polynomial))},
                   {"degree_distance", array_of(r.degree_distance)},
                   {"k_measures", km}});
}

std::string emit(const StratumReport& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("scale,measure");
    for (const auto& t : r.trace) csv.row(t.scale, t.measure);
    return csv.str();
  }
  Json tr = Json::array();
  for (const auto& t : r.trace) {
    tr.push_back(Json{{"scale", num(t.scale)}, {"measure", num(t.measure)}});
  }
  return dump(Json{{"member", r.member}, {"trace", tr}});
}

std::string emit(const MinkowskiReport& r, Format f) {
  if (f == Format::Csv) {
    Csv csv("r,volume");
    for (std::size_t i = 0; i < r.radii.size(); ++i) csv.row(r.radii[i], r.volumes[i]);
    return csv.str();
  }
  return dump(Json{{"radii", array_of(r.radii)},
                   {"volumes", array_of(r.volumes)},
                   {"exponent", num(r.exponent)},
                   {"detection_pitch", num(r.detection_pitch)},
                   {"cells", r.cells},
                   {"points", r.points}});
}

std::string emit(const CriticalSet& s, Format f) {
  if (f == Format::Csv) {
    std::string header;
    for (int k = 0; k < s.dim(); ++k) header += (k ? ",x" : "x") + std::to_string(k + 1);
    std::ostringstream os;
    os << header << '\n';
    for (const auto& p : s.points()) {
      for (int k = 0; k < s.dim(); ++k) os << (k ? "," : "") << format_double(p[k]);
      os << '\n';
    }
    return os.str();
  }
  Json pts = Json::array();
  for (const auto& p : s.points()) pts.push_back(array_of(p));
  return dump(Json{{"pitch", num(s.pitch())},
                   {"cells", s.cell_count()},
                   {"unresolved", s.unresolved()},
                   {"points", pts}});
}

}  // namespace pspectral
