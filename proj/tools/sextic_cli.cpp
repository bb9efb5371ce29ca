#include <sextic/sextic.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using Json = nlohmann::json;

namespace {

constexpr int kBadInput = SEXTIC_BAD_INPUT;

struct CliInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error(path + " is not valid JSON");
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// "re,im" or a plain real.
Json complex_arg(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return Json{{"re", s}, {"im", "0"}};
  return Json{{"re", s.substr(0, comma)}, {"im", s.substr(comma + 1)}};
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

struct Common {
  std::string out;
  std::string csv;
  std::string request;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "write the JSON result here instead of stdout");
  app->add_option("--request", c.request, "JSON file whose keys are merged into the request");
}

int emit(sextic_context* ctx, const std::string& command, Json request, const Common& c, bool print_csv = false) {
  if (!c.request.empty()) request.update(read_json(c.request));
  sextic_result* r = nullptr;
  sextic_status st = sextic_run(ctx, command.c_str(), request.dump().c_str(), &r);
  if (!r) {
    std::cerr << "error: " << sextic_last_error(ctx) << '\n';
    return st;
  }
  std::string json = sextic_result_json(r);
  std::string csv = sextic_result_csv(r);
  if (c.out.empty()) {
    if (print_csv) {
      std::cout << csv;
    } else {
      std::cout << json;
    }
  } else {
    write_text(c.out, json);
    if (print_csv) std::cout << csv;
  }
  if (!c.csv.empty()) write_text(c.csv, csv);
  if (st != SEXTIC_OK) std::cerr << sextic_status_string(st) << ": " << sextic_result_message(r) << '\n';
  sextic_result_destroy(r);
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy-free sextic potentials: QES spectra, Darboux descendants, loci, Stieltjes relations, pole dynamics"};
  app.require_subcommand(1);
  unsigned bits = 0;
  if (const char* env = std::getenv("SEXTIC_PRECISION_BITS")) bits = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  app.add_option("--precision", bits, "working precision in bits (default 256, or SEXTIC_PRECISION_BITS)");
  app.set_version_flag("--version", std::string(sextic_version()));

  Common common;
  std::string nu = "7", ell = "0", eps = "-1", branch = "minus-l", tol;

  auto* qes = app.add_subcommand("qes", "quasi-exactly solvable spectrum");
  qes->add_option("--nu", nu)->required();
  qes->add_option("--ell", ell);
  qes->add_option("--eps,--exp", eps, "minus or plus (sign in exp(eps x^4/4))");
  qes->add_option("--branch", branch, "minus-l or l-plus-one");
  qes->add_option("--tol", tol);
  add_common(qes, common);

  std::string family, subset, out_dir;
  bool enumerate = false;
  int classify = -1;
  auto* darboux = app.add_subcommand("darboux", "Crum-Darboux descendants");
  darboux->add_option("--nu", nu)->required();
  darboux->add_option("--ell", ell);
  darboux->add_option("--eps,--exp", eps);
  darboux->add_option("--branch", branch);
  darboux->add_option("--family", family, "D++, D+-, D-+ or D--");
  darboux->add_option("--subset", subset, "comma-separated 1-based indices");
  darboux->add_flag("--enumerate", enumerate, "all 2^M subsets");
  darboux->add_option("--out-dir", out_dir, "with --enumerate, one JSON file per descendant");
  darboux->add_option("--classify", classify, "membership verdict for N poles");
  darboux->add_option("--tol", tol);
  add_common(darboux, common);

  std::string mode, config, potential, nu_end;
  int steps = 20, max_iter = 0;
  auto* locus = app.add_subcommand("locus", "trivial-monodromy checks, Newton and continuation on pole configurations");
  locus->add_option("mode", mode, "check, solve or continue")->required();
  locus->add_option("--config", config);
  locus->add_option("--potential", potential);
  locus->add_option("--nu-end", nu_end);
  locus->add_option("--steps", steps);
  locus->add_option("--max-iter", max_iter);
  locus->add_option("--tol", tol);
  locus->add_option("--csv", common.csv, "continuation branch as CSV");
  add_common(locus, common);

  std::string psi, poles;
  bool symmetric = false;
  std::uint64_t seed = 20261018;
  int starts = 24;
  auto* stieltjes = app.add_subcommand("stieltjes", "Stieltjes relations for quasi-rational ground states");
  bool sweep_flag = false;
  stieltjes->add_option("mode", mode, "residual, solve, implies, infer or shape-sweep");
  stieltjes->add_flag("--shape-sweep", sweep_flag, "same as mode shape-sweep");
  stieltjes->add_option("--psi", psi, "JSON file with zeros, poles, mu, eps");
  stieltjes->add_flag("--symmetric", symmetric);
  stieltjes->add_option("--poles", poles, "shape-sweep poles as re,im;re,im");
  stieltjes->add_option("--nu", nu);
  stieltjes->add_option("--ell", ell);
  stieltjes->add_option("--seed", seed);
  stieltjes->add_option("--starts", starts);
  stieltjes->add_option("--max-iter", max_iter);
  stieltjes->add_option("--tol", tol);
  add_common(stieltjes, common);

  std::string state, c1, c2, closed_form, t0 = "0.001", t_end = "1";
  double rtol = 1e-12, atol = 1e-12, max_step = 0.05;
  auto* dynamics = app.add_subcommand("dynamics", "time evolution of zeros and poles");
  dynamics->add_option("--state", state, "JSON state file");
  dynamics->add_option("--closed-form-nu7", closed_form, "real coefficients c1,c2 of the nu = 7 closed form");
  dynamics->add_option("--c1", c1, "complex c1 as re,im");
  dynamics->add_option("--c2", c2);
  dynamics->add_option("--t0", t0);
  dynamics->add_option("--t-end", t_end);
  dynamics->add_option("--rtol", rtol);
  dynamics->add_option("--atol", atol);
  dynamics->add_option("--max-step", max_step);
  dynamics->add_option("--csv", common.csv, "trajectory CSV (stdout if --out is given and --csv is not)");
  add_common(dynamics, common);

  std::string criteria;
  auto* repro = app.add_subcommand("repro", "acceptance table");
  repro->add_option("--seed", seed);
  repro->add_option("--criteria", criteria, "comma-separated criterion ids");
  add_common(repro, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kBadInput;
  }

  sextic_context* ctx = nullptr;
  if (sextic_context_create(bits, &ctx) != SEXTIC_OK) {
    std::cerr << "error: precision must be between 32 and 65536 bits\n";
    return kBadInput;
  }
  int code = 0;
  try {
    Json req = Json::object();
    if (!tol.empty()) req["tol"] = tol;
    if (max_iter > 0) req["max_iter"] = max_iter;
    if (*qes) {
      req.update(Json{{"nu", nu}, {"ell", ell}, {"eps", eps}, {"branch", branch}});
      code = emit(ctx, "qes", req, common);
    } else if (*darboux) {
      req.update(Json{{"nu", nu}, {"ell", ell}, {"eps", eps}, {"branch", branch}});
      if (!family.empty()) req["family"] = family;
      if (classify >= 0) {
        req["classify"] = classify;
      } else if (enumerate) {
        req["enumerate"] = true;
      } else {
        req["subset"] = int_list(subset);
      }
      if (enumerate && !out_dir.empty()) {
        if (!common.request.empty()) req.update(read_json(common.request));
        sextic_result* r = nullptr;
        code = sextic_run(ctx, "darboux", req.dump().c_str(), &r);
        if (r) {
          Json res = Json::parse(sextic_result_json(r));
          std::filesystem::create_directories(out_dir);
          const auto& list = res.value("descendants", Json::array());
          for (size_t i = 0; i < list.size(); ++i) {
            write_text(out_dir + "/descendant_" + std::to_string(i) + ".json", list[i].dump(2) + "\n");
          }
          Json summary = res.value("summary", Json::array());
          write_text(out_dir + "/summary.json", summary.dump(2) + "\n");
          std::cout << "subset\tnew_nu\tnew_ell\tdeg_P\tpoles\tmonodromy_free\n";
          for (const auto& s : summary) {
            std::cout << s["subset"].dump() << '\t' << s["new_nu"].get<std::string>() << '\t'
                      << s["new_ell"].get<std::string>() << '\t' << s["deg_P"] << '\t' << s["poles"] << '\t'
                      << s["monodromy_free"] << '\n';
          }
          if (code != SEXTIC_OK) std::cerr << sextic_result_message(r) << '\n';
          sextic_result_destroy(r);
        } else {
          std::cerr << "error: " << sextic_last_error(ctx) << '\n';
        }
      } else {
        code = emit(ctx, "darboux", req, common);
      }
    } else if (*locus) {
      req["mode"] = mode;
      if (!config.empty()) req["config"] = read_json(config);
      if (!potential.empty()) req["potential"] = read_json(potential);
      if (!nu_end.empty()) req["nu_end"] = nu_end;
      req["steps"] = steps;
      code = emit(ctx, "locus", req, common);
    } else if (*stieltjes) {
      if (sweep_flag) mode = "shape-sweep";
      if (mode.empty()) throw CliInputError("stieltjes needs a mode");
      req["mode"] = mode;
      if (!psi.empty()) req["psi"] = read_json(psi);
      req["symmetric"] = symmetric;
      if (mode == "shape-sweep") {
        Json list = Json::array();
        std::stringstream ss(poles);
        std::string item;
        while (std::getline(ss, item, ';')) {
          if (!item.empty()) list.push_back(complex_arg(item));
        }
        req.update(Json{{"poles", list}, {"nu", nu}, {"ell", ell}, {"seed", seed}, {"starts", starts}});
      }
      code = emit(ctx, "stieltjes", req, common);
    } else if (*dynamics) {
      if (!closed_form.empty()) {
        auto comma = closed_form.find(',');
        if (comma == std::string::npos) throw CliInputError("--closed-form-nu7 expects c1,c2");
        c1 = closed_form.substr(0, comma);
        c2 = closed_form.substr(comma + 1);
      }
      if (!state.empty()) {
        req["state"] = read_json(state);
      } else if (!c1.empty() && !c2.empty()) {
        req["closed_form_nu7"] = Json{{"c1", complex_arg(c1)}, {"c2", complex_arg(c2)}, {"t0", t0}};
      } else if (common.request.empty()) {
        throw CliInputError("dynamics needs --state, --closed-form-nu7 or --c1/--c2");
      }
      req.update(Json{{"t_end", t_end}, {"rtol", rtol}, {"atol", atol}, {"max_step", max_step}});
      // Summary JSON on stdout, trajectory in --csv; with --out the CSV goes to stdout.
      code = emit(ctx, "dynamics", req, common, !common.out.empty() && common.csv.empty());
    } else if (*repro) {
      req["seed"] = seed;
      if (!criteria.empty()) req["criteria"] = int_list(criteria);
      code = emit(ctx, "repro", req, common, true);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kBadInput;
  }
  sextic_context_destroy(ctx);
  return code;
}
