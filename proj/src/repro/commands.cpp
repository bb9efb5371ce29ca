#include "repro/commands.hpp"

#include "repro/acceptance.hpp"

#include <sstream>

namespace sextic::repro {

using io::Json;

namespace {

Real real_or(const Json& req, const char* key, double fallback) {
  return req.contains(key) ? io::decode_real(req.at(key)) : Real(fallback);
}

int eps_of(const Json& req) {
  if (!req.contains("eps")) return -1;
  const Json& e = req.at("eps");
  if (e.is_string()) {
    std::string s = e.get<std::string>();
    if (s == "minus" || s == "-1" || s == "-") return -1;
    if (s == "plus" || s == "1" || s == "+1" || s == "+") return 1;
    throw Error(ErrorCode::Parse, "eps must be minus or plus, got " + s);
  }
  int v = e.get<int>();
  if (v != 1 && v != -1) throw Error(ErrorCode::Parse, "eps must be +1 or -1");
  return v;
}

qes::Branch branch_of(const Json& req) {
  std::string b = req.value("branch", "minus-l");
  if (b == "minus-l") return qes::Branch::MinusL;
  if (b == "l-plus-one") return qes::Branch::LPlusOne;
  throw Error(ErrorCode::Parse, "branch must be minus-l or l-plus-one, got " + b);
}

qes::QESProblem problem_of(const Json& req) {
  if (!req.contains("nu")) throw Error(ErrorCode::Parse, "missing nu");
  qes::QESProblem p{io::decode_real(req.at("nu")), real_or(req, "ell", 0), eps_of(req), branch_of(req)};
  if (req.contains("family")) {
    auto f = darboux::family_from_string(req.at("family").get<std::string>());
    if (!f) throw Error(ErrorCode::Parse, "unknown family " + req.at("family").dump());
    p.eps = darboux::family_eps(*f);
    p.branch = darboux::family_branch(*f);
  }
  return p;
}

Real tol_of(const Json& req) { return req.contains("tol") ? io::decode_real(req.at("tol")) : num::default_tolerance(); }

CommandResult cmd_qes(const Json& req) {
  CommandResult out;
  auto spec = qes::qes_spectrum(problem_of(req), tol_of(req));
  out.json = io::spectrum_to_json(spec);
  return out;
}

CommandResult cmd_darboux(const Json& req) {
  CommandResult out;
  const Real tol = tol_of(req);
  if (req.contains("classify")) {
    int N = req.at("classify").get<int>();
    out.json = io::membership_to_json(darboux::classify_membership(N, io::decode_real(req.at("nu")), real_or(req, "ell", 0), tol));
    return out;
  }
  auto p = problem_of(req);
  auto base = RationalPotential::sextic(p.nu, p.ell);
  auto describe = [&](const darboux::DarbouxDescendant& d) {
    auto mono = locus::trivial_monodromy_check(d.potential, real_or(req, "monodromy_tol", 1e-30));
    return io::descendant_to_json(d, mono, darboux::simple_zero_audit(d, tol));
  };
  if (req.value("enumerate", false)) {
    auto family = darboux::family_of(p.eps, p.branch);
    auto all = darboux::enumerate_darboux_set(p.nu, p.ell, family, tol, req.value("workers", 0u));
    Json list = Json::array(), summary = Json::array();
    for (const auto& d : all) {
      Json dj = describe(d);
      summary.push_back(Json{{"subset", d.subset},
                             {"new_nu", d.new_nu.to_string(20)},
                             {"new_ell", d.new_ell.to_string(20)},
                             {"deg_P", d.wronskian.P_I.degree()},
                             {"poles", d.potential.poles.size()},
                             {"monodromy_free", dj["monodromy"]["satisfied"]}});
      list.push_back(std::move(dj));
    }
    out.json = Json{{"family", darboux::to_string(family)}, {"descendants", list}, {"summary", summary}};
    return out;
  }
  auto spec = qes::qes_spectrum(p, tol);
  std::vector<int> subset = req.value("subset", std::vector<int>{});
  out.json = describe(darboux::crum_potential(base, subset, spec, tol));
  return out;
}

CommandResult cmd_locus(const Json& req) {
  CommandResult out;
  std::string mode = req.value("mode", "check");
  const Real tol = tol_of(req);
  if (mode == "check") {
    if (req.contains("potential")) {
      out.json = io::report_to_json(locus::trivial_monodromy_check(io::potential_from_json(req.at("potential")), tol));
    } else {
      auto c = io::config_from_json(req.at("config"));
      out.json = io::report_to_json(locus::trivial_monodromy_check(c.potential(), tol));
      out.json["locus_residual"] = Json::array();
      bool simple = true;
      for (const auto& p : c.points) simple = simple && p.k == 1;
      const auto residuals = simple ? locus::locus_residual(c) : locus::higher_locus_residual(c);
      for (const auto& r : residuals) out.json["locus_residual"].push_back(io::encode(r));
      out.json["locus_residual_max"] = io::encode(num::max_abs(residuals));
    }
    return out;
  }
  locus::NewtonOptions opts;
  opts.max_iter = req.value("max_iter", opts.max_iter);
  auto init = io::config_from_json(req.at("config"));
  if (mode == "solve") {
    auto r = locus::solve_locus_newton(init, tol, opts);
    out.json = io::solve_to_json(r);
    if (!r.converged) {
      out.status = Status::NonConvergence;
      out.message = r.diagnostic;
    }
    return out;
  }
  if (mode == "continue") {
    std::vector<Real> path;
    if (req.contains("nu_path")) {
      for (const auto& v : req.at("nu_path")) path.push_back(io::decode_real(v));
    } else {
      Real a = init.nu, b = io::decode_real(req.at("nu_end"));
      int steps = req.value("steps", 20);
      for (int k = 0; k <= steps; ++k) path.push_back(a + (b - a) * Real(k) / Real(steps));
    }
    auto r = locus::homotopy_continue(init, path, tol, opts);
    out.json = io::continuation_to_json(r);
    std::ostringstream csv;
    csv << "nu,residual";
    const size_t n = init.points.size();
    for (size_t j = 0; j < n; ++j) csv << ",x" << j << "_re,x" << j << "_im";
    csv << '\n';
    for (size_t i = 0; i < r.branch.size(); ++i) {
      csv << r.nus[i].to_string(20) << ',' << r.residuals[i].to_string(6);
      for (const auto& p : r.branch[i].points) csv << ',' << p.x.re.to_string(20) << ',' << p.x.im.to_string(20);
      csv << '\n';
    }
    out.csv = csv.str();
    if (r.failure) {
      out.status = Status::NonConvergence;
      out.message = r.diagnostic;
    }
    return out;
  }
  throw Error(ErrorCode::Parse, "locus mode must be check, solve or continue");
}

CommandResult cmd_stieltjes(const Json& req) {
  CommandResult out;
  std::string mode = req.value("mode", "residual");
  const Real tol = tol_of(req);
  if (mode == "shape-sweep") {
    std::vector<BigComplex> poles;
    for (const auto& p : req.at("poles")) poles.push_back(io::decode_complex(p));
    auto sweep = stieltjes::shape_sweep(poles, io::decode_real(req.at("nu")), real_or(req, "ell", 0),
                                        req.value("seed", std::uint64_t{1}), req.value("starts", 24),
                                        req.value("workers", 0u));
    out.json = io::shape_sweep_to_json(sweep);
    return out;
  }
  auto psi = io::psi_from_json(req.at("psi"));
  if (mode == "residual") {
    out.json = io::stieltjes_report_to_json(stieltjes::stieltjes_residual(psi));
  } else if (mode == "infer") {
    out.json = Json{{"nu", io::encode(stieltjes::inferred_nu(psi))},
                    {"poly", io::encode(stieltjes::infer_polynomial_part(psi))},
                    {"lambda", io::encode(stieltjes::implied_eigenvalue(psi))},
                    {"potential", io::potential_to_json(stieltjes::implied_potential(psi))}};
  } else if (mode == "implies") {
    out.json = io::implication_to_json(stieltjes::stieltjes_implies_locus(psi, tol));
  } else if (mode == "solve") {
    stieltjes::SolveOptions opts;
    opts.max_iter = req.value("max_iter", opts.max_iter);
    auto r = stieltjes::solve_stieltjes(psi, req.value("symmetric", false), tol, opts);
    out.json = io::stieltjes_solve_to_json(r);
    if (r.converged) {
      out.json["implication"] = io::implication_to_json(stieltjes::stieltjes_implies_locus(r.psi, tol));
    } else {
      out.status = Status::NonConvergence;
      out.message = r.diagnostic;
    }
  } else {
    throw Error(ErrorCode::Parse, "stieltjes mode must be residual, infer, implies, solve or shape-sweep");
  }
  return out;
}

CommandResult cmd_dynamics(const Json& req) {
  CommandResult out;
  dynamics::DynamicsState s;
  if (req.contains("closed_form_nu7")) {
    const Json& cf = req.at("closed_form_nu7");
    s = dynamics::closed_form_nu7(real_or(cf, "t0", 1e-3), io::decode_complex(cf.at("c1")), io::decode_complex(cf.at("c2")));
  } else {
    s = io::state_from_json(req.at("state"));
  }
  dynamics::IntegrateOptions opts;
  opts.rtol = req.value("rtol", opts.rtol);
  opts.atol = req.value("atol", opts.atol);
  opts.max_step = req.value("max_step", opts.max_step);
  auto tr = dynamics::integrate(s, io::decode_real(req.at("t_end")), opts);
  out.csv = io::trajectory_csv(tr);

  Json summary{{"samples", tr.states.size()},
               {"rejected_steps", tr.rejected_steps},
               {"t_final", tr.states.back().t.to_string(20)},
               {"stop", tr.stop ? to_string(*tr.stop) : ""},
               {"diagnostic", tr.diagnostic},
               {"initial_state", io::state_to_json(s)},
               {"final_state", io::state_to_json(tr.states.back())}};
  if (!tr.diagnostics.empty()) {
    const auto& d0 = tr.diagnostics.front();
    Real drift(0), drift_t(0), gap(0), cm(0), energy(0);
    for (const auto& d : tr.diagnostics) {
      drift = max(drift, abs(d.H - d0.H));
      drift_t = max(drift_t, abs(d.H_tilde - d0.H_tilde));
      gap = max(gap, abs(d.H - d.H_tilde));
      cm = max(cm, max(d.cm_zeros, d.cm_poles));
      energy = max(energy, max(abs(d.H), abs(d.H_tilde)));
    }
    Real bound = Real(10) * Real(opts.rtol) * max(Real(1), max(abs(d0.H), abs(d0.H_tilde)));
    summary["H0"] = io::encode(d0.H);
    summary["H_tilde0"] = io::encode(d0.H_tilde);
    summary["max_H_drift"] = drift.to_string(6);
    summary["max_H_tilde_drift"] = drift_t.to_string(6);
    summary["max_H_minus_H_tilde"] = gap.to_string(6);
    summary["max_cm_residual"] = cm.to_string(6);
    summary["conserved"] = drift < bound && drift_t < bound;
    summary["zero_energy"] = energy < Real(10) * Real(opts.rtol);
  }
  out.json = summary;
  if (tr.stop) {
    out.status = Status::Collision;
    out.message = tr.diagnostic;
  }
  return out;
}

CommandResult cmd_repro(const Json& req) {
  CommandResult out;
  std::uint64_t seed = req.value("seed", std::uint64_t{20261018});
  std::vector<int> ids = req.value("criteria", std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  Json rows = Json::array();
  bool all = true;
  std::string table;
  for (int id : ids) {
    auto r = run_criterion(id, seed);
    rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    table += format_line(r) + "\n";
    all = all && r.pass;
  }
  out.json = Json{{"criteria", rows}, {"all_pass", all}, {"seed", seed}};
  out.csv = table;
  if (!all) {
    out.status = Status::Failure;
    out.message = "some criteria failed";
  }
  return out;
}

Status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSolutions: return Status::NoSolutions;
    case ErrorCode::NonConvergence:
    case ErrorCode::SingularJacobian: return Status::NonConvergence;
    case ErrorCode::Collision:
    case ErrorCode::StepUnderflow: return Status::Collision;
    case ErrorCode::Parse:
    case ErrorCode::Malformed:
    case ErrorCode::InvalidArgument: return Status::BadInput;
    default: return Status::Failure;
  }
}

}  // namespace

CommandResult run_command(const std::string& name, const Json& request) {
  try {
    if (!request.is_object()) throw Error(ErrorCode::Parse, "request must be a JSON object");
    if (name == "qes") return cmd_qes(request);
    if (name == "darboux") return cmd_darboux(request);
    if (name == "locus") return cmd_locus(request);
    if (name == "stieltjes") return cmd_stieltjes(request);
    if (name == "dynamics") return cmd_dynamics(request);
    if (name == "repro") return cmd_repro(request);
    throw Error(ErrorCode::Parse, "unknown command " + name);
  } catch (const Error& e) {
    CommandResult out;
    out.status = status_for(e.code());
    out.message = e.what();
    out.json = Json{{"error", to_string(e.code())}, {"message", e.what()}};
    return out;
  } catch (const Json::exception& e) {
    CommandResult out;
    out.status = Status::BadInput;
    out.message = e.what();
    out.json = Json{{"error", "parse error"}, {"message", e.what()}};
    return out;
  }
}

}  // namespace sextic::repro
