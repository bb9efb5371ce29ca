#include "io/json_io.hpp"

#include <fstream>
#include <sstream>

namespace sextic::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::Malformed, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::string error_name(const std::optional<ErrorCode>& e) { return e ? to_string(*e) : ""; }

Json complex_list(const std::vector<BigComplex>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) out.push_back(encode(z));
  return out;
}

}  // namespace

std::string encode(const Real& x) { return x.is_zero() ? Real(0).to_exact_string() : x.to_exact_string(); }

Json encode(const BigComplex& z) { return Json{{"re", encode(z.re)}, {"im", encode(z.im)}}; }

Json encode(const Poly& p) {
  Json out = Json::object();
  for (int k = 0; k <= p.degree(); ++k) {
    if (!p.coeff(k).is_zero()) out[std::to_string(k)] = encode(p.coeff(k));
  }
  return out;
}

Real decode_real(const Json& j) {
  if (j.is_string()) return Real::parse(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long long>());
  if (j.is_number()) return Real::parse(j.dump());
  throw Error(ErrorCode::Malformed, "expected a number or decimal string, got " + j.dump());
}

BigComplex decode_complex(const Json& j) {
  if (j.is_object()) {
    BigComplex z;
    if (j.contains("re")) z.re = decode_real(j.at("re"));
    if (j.contains("im")) z.im = decode_real(j.at("im"));
    return z;
  }
  return BigComplex(decode_real(j));
}

Poly decode_poly(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Malformed, "polynomial must be an object keyed by degree");
  std::vector<BigComplex> c;
  for (const auto& [key, value] : j.items()) {
    int k = 0;
    try {
      size_t used = 0;
      k = std::stoi(key, &used);
      if (used != key.size() || k < 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Malformed, "bad polynomial degree key \"" + key + "\"");
    }
    if (static_cast<size_t>(k) >= c.size()) c.resize(static_cast<size_t>(k) + 1);
    c[static_cast<size_t>(k)] = decode_complex(value);
  }
  return Poly(std::move(c));
}

Json potential_to_json(const RationalPotential& v, const Json& meta) {
  Json poles = Json::array();
  for (const auto& p : v.poles) {
    poles.push_back(Json{{"re", encode(p.location.re)},
                         {"im", encode(p.location.im)},
                         {"mult", p.multiplicity},
                         {"strength", encode(p.strength)}});
  }
  Json m = meta;
  m["precision_bits"] = num::precision_bits();
  m["symmetric"] = v.symmetric;
  return Json{{"poly", encode(v.poly)}, {"ell", encode(v.ell)}, {"poles", poles}, {"meta", m}};
}

RationalPotential potential_from_json(const Json& j) {
  RationalPotential v;
  v.poly = decode_poly(field(j, "poly"));
  v.ell = j.contains("ell") ? decode_real(j.at("ell")) : Real(0);
  if (j.contains("poles")) {
    for (const auto& p : j.at("poles")) {
      int k = p.value("mult", 1);
      BigComplex loc = decode_complex(p);
      if (p.contains("strength")) {
        v.poles.push_back({loc, k, decode_complex(p.at("strength"))});
      } else {
        v.add_pole(loc, k);
      }
    }
  }
  if (j.contains("meta") && j.at("meta").contains("symmetric")) v.symmetric = j.at("meta").at("symmetric").get<bool>();
  return v;
}

Json config_to_json(const locus::PoleConfiguration& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(Json{{"re", encode(p.x.re)}, {"im", encode(p.x.im)}, {"mult", p.k}});
  return Json{{"nu", encode(c.nu)}, {"ell", encode(c.ell)}, {"symmetric", c.symmetric}, {"points", pts}};
}

locus::PoleConfiguration config_from_json(const Json& j) {
  locus::PoleConfiguration c;
  c.nu = decode_real(field(j, "nu"));
  c.ell = j.contains("ell") ? decode_real(j.at("ell")) : Real(0);
  c.symmetric = j.value("symmetric", false);
  for (const auto& p : field(j, "points")) c.points.push_back({decode_complex(p), p.value("mult", 1)});
  return c;
}

Json psi_to_json(const QuasiRationalFunction& psi) {
  Json out{{"mu", encode(psi.mu)}, {"eps", psi.eps}, {"zeros", complex_list(psi.zeros)}, {"poles", complex_list(psi.poles)}};
  if (psi.poly_factor) out["poly_factor"] = encode(*psi.poly_factor);
  return out;
}

QuasiRationalFunction psi_from_json(const Json& j) {
  QuasiRationalFunction psi;
  psi.mu = j.contains("mu") ? decode_real(j.at("mu")) : Real(0);
  psi.eps = j.value("eps", -1);
  if (psi.eps != 1 && psi.eps != -1) throw Error(ErrorCode::Malformed, "eps must be +1 or -1");
  if (j.contains("zeros")) {
    for (const auto& z : j.at("zeros")) psi.zeros.push_back(decode_complex(z));
  }
  if (j.contains("poles")) {
    for (const auto& z : j.at("poles")) psi.poles.push_back(decode_complex(z));
  }
  if (j.contains("poly_factor")) psi.poly_factor = decode_poly(j.at("poly_factor"));
  return psi;
}

Json state_to_json(const dynamics::DynamicsState& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(Json{{"re", encode(p.z.re)}, {"im", encode(p.z.im)}, {"gamma", p.gamma}});
  return Json{{"t", encode(s.t)}, {"mu", encode(s.mu)}, {"eps", s.eps}, {"phase", encode(s.phase_f)}, {"points", pts}};
}

dynamics::DynamicsState state_from_json(const Json& j) {
  dynamics::DynamicsState s;
  s.t = j.contains("t") ? decode_real(j.at("t")) : Real(0);
  s.mu = j.contains("mu") ? decode_real(j.at("mu")) : Real(0);
  s.eps = j.value("eps", -1);
  if (j.contains("phase")) s.phase_f = decode_complex(j.at("phase"));
  for (const auto& p : field(j, "points")) {
    int g = p.value("gamma", 1);
    if (g == 0) throw Error(ErrorCode::Malformed, "gamma must be a nonzero integer");
    s.points.push_back({decode_complex(p), g});
  }
  return s;
}

Json spectrum_to_json(const qes::QESSpectrum& s) {
  Json eig = Json::array();
  for (int i = 0; i < s.M; ++i) {
    const auto iu = static_cast<size_t>(i);
    eig.push_back(Json{{"lambda", encode(s.eigenvalues[iu])},
                       {"polynomial", encode(qes::eigen_polynomial(s.eigenvectors[iu]))}});
  }
  return Json{{"nu", encode(s.problem.nu)},
              {"ell", encode(s.problem.ell)},
              {"eps", s.problem.eps},
              {"mu", encode(s.problem.mu())},
              {"M", s.M},
              {"char_poly", encode(s.char_poly)},
              {"eigenpairs", eig},
              {"normalisation_fallback", s.normalisation_fallback}};
}

Json report_to_json(const locus::LocusReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json coeffs = Json::object();
    for (size_t i = 0; i < p.orders.size(); ++i) coeffs[std::to_string(p.orders[i])] = encode(p.coefficients[i]);
    pts.push_back(Json{{"location", encode(p.location)}, {"leading", encode(p.leading)}, {"m", p.m}, {"coefficients", coeffs}});
  }
  return Json{{"points", pts}, {"max_abs", encode(r.max_abs)}, {"satisfied", r.satisfied}, {"diagnostic", r.diagnostic}};
}

Json solve_to_json(const locus::SolveResult& r) {
  Json log = Json::array();
  for (const auto& s : r.log) {
    log.push_back(Json{{"iteration", s.iteration},
                       {"residual", s.residual.to_string(6)},
                       {"step", s.step.to_string(6)},
                       {"damping", s.damping.to_string(6)}});
  }
  return Json{{"config", config_to_json(r.config)},
              {"iterations", r.iterations},
              {"log", log},
              {"residual", encode(r.residual)},
              {"residuals", complex_list(locus::locus_residual(r.config))},
              {"converged", r.converged},
              {"failure", error_name(r.failure)},
              {"diagnostic", r.diagnostic}};
}

Json continuation_to_json(const locus::ContinuationResult& r) {
  Json samples = Json::array();
  for (size_t i = 0; i < r.branch.size(); ++i) {
    samples.push_back(Json{{"nu", encode(r.nus[i])}, {"residual", encode(r.residuals[i])}, {"config", config_to_json(r.branch[i])}});
  }
  return Json{{"samples", samples}, {"truncated", r.truncated}, {"failure", error_name(r.failure)}, {"diagnostic", r.diagnostic}};
}

Json descendant_to_json(const darboux::DarbouxDescendant& d, const locus::LocusReport& monodromy,
                        const darboux::ZeroAudit& audit) {
  Json hist = Json::object();
  for (const auto& [k, n] : audit.histogram) hist[std::to_string(k)] = n;
  Json meta{{"parent_nu", encode(d.parent.nu)},
            {"parent_ell", encode(d.parent.ell)},
            {"family", darboux::to_string(d.family)},
            {"subset", d.subset},
            {"new_nu", encode(d.new_nu)},
            {"new_ell", encode(d.new_ell)}};
  Json structure{{"origin_exponent", encode(d.wronskian.origin_exponent)},
                 {"deg_P", d.wronskian.P_I.degree()},
                 {"expected_degree", d.wronskian.expected_degree},
                 {"degree_ok", d.wronskian.degree_ok},
                 {"exponent_ok", d.wronskian.exponent_ok},
                 {"origin_nonzero", d.wronskian.origin_nonzero},
                 {"P_I", encode(d.wronskian.P_I)},
                 {"zero_histogram", hist},
                 {"all_simple", audit.all_simple},
                 {"min_zero_distance", audit.min_distance.to_string(10)},
                 {"conjecture_flag", d.conjecture_flag},
                 {"representation_gap", d.representation_gap.to_string(6)},
                 {"note", d.note}};
  return Json{{"potential", potential_to_json(d.potential, meta)},
              {"structure", structure},
              {"monodromy", report_to_json(monodromy)}};
}

Json membership_to_json(const darboux::MembershipReport& r) {
  Json grid = Json::array();
  for (const auto& [f, M] : r.grid) grid.push_back(Json{{"family", darboux::to_string(f)}, {"M", M}});
  Json fac = Json::array();
  for (const auto& [m, k] : r.factorizations) fac.push_back(Json{{"m", m}, {"k", k}});
  Json cand = Json::array();
  for (const auto& c : r.candidates) cand.push_back(Json{{"m", c.m}, {"M0", c.M0}, {"family", darboux::to_string(c.family)}});
  return Json{{"N", r.N}, {"grid", grid}, {"factorizations", fac}, {"candidates", cand}, {"verdict", r.verdict()}};
}

Json stieltjes_report_to_json(const stieltjes::StieltjesReport& r) {
  return Json{{"pole_residuals", complex_list(r.pole_residuals)},
              {"zero_residuals", complex_list(r.zero_residuals)},
              {"max_abs", encode(r.max_abs)}};
}

Json stieltjes_solve_to_json(const stieltjes::StieltjesSolve& r) {
  return Json{{"psi", psi_to_json(r.psi)},
              {"iterations", r.iterations},
              {"residual", encode(r.residual)},
              {"converged", r.converged},
              {"failure", error_name(r.failure)},
              {"diagnostic", r.diagnostic}};
}

Json implication_to_json(const stieltjes::ImplicationReport& r) {
  return Json{{"stieltjes_residual", encode(r.stieltjes)},
              {"riccati_residual", encode(r.riccati)},
              {"locus_residual", encode(r.locus)},
              {"monodromy", report_to_json(r.monodromy)},
              {"nu", encode(r.nu)},
              {"lambda", encode(r.lambda)},
              {"stieltjes_ok", r.stieltjes_ok},
              {"riccati_ok", r.riccati_ok},
              {"locus_ok", r.locus_ok}};
}

Json shape_sweep_to_json(const stieltjes::ShapeSweep& r) {
  Json shapes = Json::array();
  for (const auto& s : r.shapes) {
    shapes.push_back(Json{{"eps", s.shape.eps},
                          {"mu", encode(s.shape.mu)},
                          {"K", s.shape.K},
                          {"best_max_residual", encode(s.best_max_residual)},
                          {"best_zeros", complex_list(s.best_zeros)}});
  }
  return Json{{"shapes", shapes}, {"min_over_shapes", encode(r.min_over_shapes)}};
}

std::string trajectory_csv(const dynamics::Trajectory& tr, int digits) {
  std::ostringstream os;
  const size_t n = tr.states.empty() ? 0 : tr.states.front().points.size();
  os << "t";
  for (size_t j = 0; j < n; ++j) os << ",z" << j << "_re,z" << j << "_im";
  os << ",f_re,f_im,H_re,H_im,Ht_re,Ht_im,cm_max\n";
  for (size_t i = 0; i < tr.states.size(); ++i) {
    const auto& s = tr.states[i];
    os << s.t.to_string(digits);
    for (const auto& p : s.points) os << ',' << p.z.re.to_string(digits) << ',' << p.z.im.to_string(digits);
    os << ',' << s.phase_f.re.to_string(digits) << ',' << s.phase_f.im.to_string(digits);
    if (i < tr.diagnostics.size()) {
      const auto& d = tr.diagnostics[i];
      os << ',' << d.H.re.to_string(digits) << ',' << d.H.im.to_string(digits) << ',' << d.H_tilde.re.to_string(digits)
         << ',' << d.H_tilde.im.to_string(digits) << ',' << max(d.cm_zeros, d.cm_poles).to_string(6);
    } else {
      os << ",,,,,";
    }
    os << '\n';
  }
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

}  // namespace sextic::io
