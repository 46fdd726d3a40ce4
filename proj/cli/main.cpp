// Command-line front end: realizability checks, reduction to a gadget
// torus, exact partition functions, free energy and local statistics,
// Markov-chain sampling, and brute-force enumeration.
//
// Exit codes: 0 success, 1 domain error (infeasible or degenerate input),
// 2 I/O or validation error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hexdimer/conditioning.hpp"
#include "hexdimer/glauber.hpp"
#include "hexdimer/oracle.hpp"
#include "hexdimer/pfaffian.hpp"
#include "hexdimer/realizability.hpp"
#include "hexdimer/reduction.hpp"
#include "hexdimer/spectral.hpp"

using nlohmann::json;
using namespace hexdimer;

namespace {

constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

struct Manifest {
  json j = json::object();
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Manifest(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
      if (i) cmd += ' ';
      cmd += argv[i];
    }
    j["command"] = cmd;
    j["version"] = kVersion;
    j["inputs"] = json::object();
  }
  void input(const std::string& path, const std::string& content) {
    j["inputs"][path] = fnv1a_hex(content);
  }
  json done() {
    const auto dt = std::chrono::steady_clock::now() - t0;
    j["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    return j;
  }
};

Sig8 sig_from_json(const json& arr) {
  if (!arr.is_array() || arr.size() != 8)
    throw IoError("signature must be an array of 8 numbers");
  Sig8 s{};
  for (int i = 0; i < 8; ++i) s[i] = arr[i].get<double>();
  return s;
}

// model file: {"n": N, "signature": [8]} (uniform) or
// {"n": N, "signatures": [[8] x 2N^2]}; {"w": [8]} is accepted as an alias.
VertexModel load_model(const std::string& path, Manifest& man, int n_override = 0) {
  const std::string text = read_file(path);
  man.input(path, text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("bad JSON in ") + path + ": " + e.what());
  }
  int n = j.value("n", 1);
  if (n_override > 0) n = n_override;
  if (n < 1) throw IoError("n must be positive");
  if (j.contains("signature") || j.contains("w"))
    return VertexModel::uniform(
        n, sig_from_json(j.contains("signature") ? j["signature"] : j["w"]));
  if (j.contains("signatures")) {
    VertexModel m;
    m.h = build_honey_torus(n);
    for (const auto& a : j["signatures"]) m.sig.push_back(sig_from_json(a));
    if ((int)m.sig.size() != m.h.vertex_count())
      throw IoError("signatures list must have 2*n*n entries");
    return m;
  }
  throw IoError("model file needs a \"signature\" or \"signatures\" field");
}

FisherTorus load_fisher(const std::string& path, Manifest& man) {
  const std::string text = read_file(path);
  man.input(path, text);
  try {
    return fisher_from_json(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("bad JSON in ") + path + ": " + e.what());
  }
}

EdgeBases bases_from_json(const json& j) {
  auto mat = [](const json& m) {
    if (!m.contains("n") || !m.contains("p"))
      throw IoError("base matrix needs \"n\" and \"p\" column arrays");
    return BaseChange{m["n"][0].get<double>(), m["n"][1].get<double>(),
                      m["p"][0].get<double>(), m["p"][1].get<double>()};
  };
  return EdgeBases{mat(j.at("Ta")), mat(j.at("Tb")), mat(j.at("Tc"))};
}

json bases_to_json(const EdgeBases& b) {
  auto mat = [](const BaseChange& T) {
    return json{{"n", {T.n0, T.n1}}, {"p", {T.p0, T.p1}}};
  };
  return json{{"Ta", mat(b.Ta)}, {"Tb", mat(b.Tb)}, {"Tc", mat(b.Tc)}};
}

void require_uniform(const VertexModel& m) {
  for (const auto& s : m.sig)
    for (int i = 0; i < 8; ++i)
      if (s[i] != m.sig[0][i])
        throw std::invalid_argument("this operation needs identical signatures everywhere");
}

int parse_config(const std::string& s) {
  try {
    return parse_cfg(s);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) std::cout << text;
  else write_file(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex models on the honeycomb torus: realizability, "
               "dimer reduction, exact and asymptotic statistics"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (informational)")
      ->envname("HEXD_THREADS");

  // ---- check ----
  auto* c_check = app.add_subcommand("check", "realizability criteria for a signature");
  std::string check_model;
  bool f_orth = false, f_gen = false, f_bip = false;
  double check_tol = kAlgebraTol;
  c_check->add_option("--model", check_model, "model JSON file")->required();
  c_check->add_flag("--orthogonal", f_orth, "rotation-based criterion with angles");
  c_check->add_flag("--general", f_gen, "degree-4 polynomial criterion");
  c_check->add_flag("--bipartite", f_bip, "bipartite-gadget criterion");
  c_check->add_option("--tol", check_tol, "relative tolerance");

  // ---- reduce ----
  auto* c_red = app.add_subcommand("reduce", "reduce a model to a gadget torus");
  std::string red_model, red_bases = "auto", red_bases_file, red_out;
  bool red_norm = false;
  c_red->add_option("--model", red_model)->required();
  c_red->add_option("--bases", red_bases, "auto | file");
  c_red->add_option("--bases-file", red_bases_file, "bases JSON when --bases file");
  c_red->add_option("--out", red_out, "output gadget-torus JSON path");
  c_red->add_flag("--normalize", red_norm, "scale triangle weights to d = 1");

  // ---- partition ----
  auto* c_part = app.add_subcommand("partition", "exact toroidal partition function");
  std::string part_fisher, part_edges, part_out;
  int part_n = 0;
  c_part->add_option("--fisher", part_fisher)->required();
  c_part->add_option("--n", part_n, "expected torus size (validated)");
  c_part->add_option("--edges", part_edges, "u-v,u-v,... edge-probability query");
  c_part->add_option("--out", part_out, "CSV output path (default stdout)");

  // ---- free-energy ----
  auto* c_fe = app.add_subcommand("free-energy", "infinite-volume free energy");
  std::string fe_fisher;
  int fe_grid = 256;
  c_fe->add_option("--fisher", fe_fisher)->required();
  c_fe->add_option("--grid", fe_grid, "quadrature resolution per axis");

  // ---- local-prob ----
  auto* c_lp = app.add_subcommand("local-prob", "infinite-volume local statistics");
  std::string lp_model, lp_cfg, lp_pair_cfg;
  int lp_grid = 256;
  c_lp->add_option("--model", lp_model)->required();
  c_lp->add_option("--vertex-config", lp_cfg, "forced configuration, e.g. 011")->required();
  c_lp->add_option("--pair-config", lp_pair_cfg,
                   "also force this configuration at the a-adjacent vertex");
  c_lp->add_option("--grid", lp_grid);

  // ---- local-prob-finite ----
  auto* c_lpf = app.add_subcommand("local-prob-finite", "finite-torus conditioning");
  std::string lpf_model, lpf_at = "0,0", lpf_cfg;
  int lpf_n = 0;
  c_lpf->add_option("--model", lpf_model)->required();
  c_lpf->add_option("--n", lpf_n, "torus size");
  c_lpf->add_option("--at", lpf_at, "cell i,j of the conditioned vertex");
  c_lpf->add_option("--config", lpf_cfg)->required();

  // ---- sample ----
  auto* c_smp = app.add_subcommand("sample", "Markov-chain sampling of the 1-2 model");
  double smp_a = 1, smp_b = 1, smp_c = 1;
  int smp_n = 8, smp_chains = 1;
  long long smp_steps = 1000000;
  uint64_t smp_seed = 1;
  std::string smp_svg;
  std::vector<std::string> smp_obs;
  bool smp_pair = false;
  c_smp->add_option("--a", smp_a);
  c_smp->add_option("--b", smp_b);
  c_smp->add_option("--c", smp_c);
  c_smp->add_option("--n", smp_n);
  c_smp->add_option("--steps", smp_steps);
  c_smp->add_option("--seed", smp_seed);
  c_smp->add_option("--svg", smp_svg, "write the final configuration as SVG");
  c_smp->add_option("--chains", smp_chains, "independent chains (seed, seed+1, ...)");
  c_smp->add_option("--observe", smp_obs,
                    "configuration observed at the first vertex (repeatable)");
  c_smp->add_flag("--observe-pair", smp_pair,
                  "also observe the two-vertex single-a-dimer event");

  // ---- oracle ----
  auto* c_or = app.add_subcommand("oracle", "brute-force enumeration (n <= 2)");
  std::string or_model, or_event;
  int or_n = 0;
  c_or->add_option("--model", or_model)->required();
  c_or->add_option("--n", or_n, "1 or 2");
  c_or->add_option("--event", or_event, "vertex:config;vertex:config;...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Manifest man(argc, argv);
  try {
    if (*c_check) {
      VertexModel m = load_model(check_model, man);
      require_uniform(m);
      const Sig8& r = m.sig[0];
      json out;
      if (!f_orth && !f_gen && !f_bip) f_orth = true;
      if (f_orth) {
        OrthogonalResult res = check_orthogonal(r, check_tol);
        json o{{"realizable", res.realizable},
               {"positively", res.positively},
               {"residual", res.residual}};
        if (res.angles)
          o["angles"] = {(*res.angles)[0], (*res.angles)[1], (*res.angles)[2]};
        out["orthogonal"] = o;
      }
      if (f_gen) {
        const auto [val, scale] = general_criterion_value(r, r, r, r);
        out["general"] = {{"realizable", check_realizable_general(r, r, r, r, check_tol)},
                          {"value", val},
                          {"scale", scale}};
      }
      if (f_bip)
        out["bipartite"] = {{"realizable", check_bipartite(r, check_tol)},
                            {"value", bipartite_criterion_value(r)}};
      out["manifest"] = man.done();
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*c_red) {
      VertexModel m = load_model(red_model, man);
      EdgeBases bases;
      if (red_bases == "auto") {
        require_uniform(m);
        auto solved = solve_base_change_1x1(m.sig[0], m.sig[0]);
        if (!solved) throw std::domain_error("model is not realizable: no base change found");
        bases = *solved;
      } else if (red_bases == "file") {
        const std::string text = read_file(red_bases_file);
        man.input(red_bases_file, text);
        bases = bases_from_json(json::parse(text));
      } else {
        throw IoError("--bases must be auto or file");
      }
      ReducedModel red = reduce_model_uniform(m, bases);
      double constant = 1.0;
      FisherTorus out_torus = red.f;
      if (red_norm) {
        constant = out_torus.d_product();
        for (auto* side : {&out_torus.black, &out_torus.white})
          for (auto& t : *side) t = TriangleWeights{t.a / t.d, t.b / t.d, t.c / t.d, 1.0};
      }
      json meta{{"bases", bases_to_json(bases)},
                {"normalization_constant", constant},
                {"manifest", man.done()}};
      json jt = json::parse(fisher_to_json(out_torus));
      jt["meta"] = meta;
      emit(red_out, jt.dump(2) + "\n");
      return 0;
    }

    if (*c_part) {
      FisherTorus f = load_fisher(part_fisher, man);
      if (part_n > 0 && f.n != part_n)
        throw IoError("torus size in file disagrees with --n");
      PartitionResult r = partition_function(f);
      std::ostringstream csv;
      csv << "theta,tau,pfaffian,sign\n";
      for (int th = 0; th < 2; ++th)
        for (int ta = 0; ta < 2; ++ta)
          csv << th << "," << ta << "," << fmt17(r.sectorPf[2 * th + ta]) << ","
              << r.signs[2 * th + ta] << "\n";
      csv << "Z,,," << fmt17(r.Z) << "\n";
      csv << "contraction,,," << fmt17(f.d_product() * r.signed_sum) << "\n";
      if (!part_edges.empty()) {
        std::vector<std::pair<int, int>> edges;
        std::stringstream ss(part_edges);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const auto dash = tok.find('-');
          if (dash == std::string::npos) throw IoError("--edges expects u-v pairs");
          edges.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
        }
        csv << "edge_probability,,," << fmt17(edge_probabilities(f, edges)) << "\n";
      }
      csv << "# manifest " << man.done().dump() << "\n";
      emit(part_out, csv.str());
      return 0;
    }

    if (*c_fe) {
      FisherTorus f = load_fisher(fe_fisher, man);
      const Products p = products_of(cell_weights(f));
      const SpectralClassification cl = classify_spectral_curve(p);
      const FreeEnergyResult r = free_energy(p, fe_grid);
      json out{{"value", r.value},
               {"error_estimate", r.error_estimate},
               {"classification",
                {{"has_node", cl.has_node},
                 {"degenerate", cl.degenerate},
                 {"node", cl.has_node ? json{cl.z0, cl.w0} : json()}}},
               {"grid", fe_grid},
               {"manifest", man.done()}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*c_lp) {
      VertexModel m = load_model(lp_model, man);
      require_uniform(m);
      const Sig8& r = m.sig[0];
      auto solved = solve_base_change_1x1(r, r);
      if (!solved) throw std::domain_error("model is not realizable: no base change found");
      const ReducedCell cell = make_reduced_cell(r, r, *solved);
      std::vector<LocalTarget> targets{LocalTarget{0, 0, true, parse_config(lp_cfg)}};
      if (!lp_pair_cfg.empty())
        targets.push_back(LocalTarget{0, 0, false, parse_config(lp_pair_cfg)});
      const double val = local_probability_infinite(cell, targets, lp_grid);
      const double val2 = local_probability_infinite(cell, targets, lp_grid / 2);
      const SpectralClassification cl =
          classify_spectral_curve(products_of(cell_weights_from(cell)));
      json out{{"value", val},
               {"error_estimate", std::fabs(val - val2)},
               {"classification", {{"has_node", cl.has_node}, {"degenerate", cl.degenerate}}},
               {"grid", lp_grid},
               {"manifest", man.done()}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*c_lpf) {
      VertexModel m = load_model(lpf_model, man, lpf_n);
      require_uniform(m);
      auto solved = solve_base_change_1x1(m.sig[0], m.sig[0]);
      if (!solved) throw std::domain_error("model is not realizable: no base change found");
      int ci = 0, cj = 0;
      if (std::sscanf(lpf_at.c_str(), "%d,%d", &ci, &cj) != 2)
        throw IoError("--at expects i,j");
      if (ci < 0 || cj < 0 || ci >= m.h.n || cj >= m.h.n) throw IoError("--at out of range");
      const double val = conditional_probability(
          m, *solved,
          {ConditionSpec{m.h.black_id(ci, cj), parse_config(lpf_cfg)}});
      json out{{"value", val}, {"n", m.h.n}, {"manifest", man.done()}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*c_smp) {
      man.j["seed"] = smp_seed;
      std::vector<ConditionEvent> observers;
      std::vector<std::string> names;
      HoneyTorus h = build_honey_torus(smp_n);
      if (smp_obs.empty() && !smp_pair) smp_obs = {"001", "010", "011", "100", "101", "110"};
      for (const auto& s : smp_obs) {
        observers.push_back(ConditionEvent{{{h.black_id(0, 0), parse_config(s)}}});
        names.push_back("{" + s + "}@black(0,0)");
      }
      if (smp_pair) {
        observers.push_back(ConditionEvent{
            {{h.black_id(0, 0), parse_config("100")}, {h.white_id(0, 0), parse_config("100")}}});
        names.push_back("single-a-dimer@cell(0,0)");
      }
      json chains = json::array();
      std::string svg;
      for (int c = 0; c < smp_chains; ++c) {
        ChainState s = init_chain(smp_n, OneTwoParams{smp_a, smp_b, smp_c}, smp_seed + c);
        auto stats = sample_chain(s, smp_steps, observers);
        json jc{{"seed", smp_seed + c},
                {"accepted", s.accepted},
                {"steps", (long long)s.steps_taken}};
        json obs = json::array();
        for (size_t o = 0; o < stats.size(); ++o)
          obs.push_back({{"event", names[o]},
                         {"mean", stats[o].mean},
                         {"std_error", stats[o].std_error}});
        jc["observers"] = obs;
        chains.push_back(jc);
        if (c == 0 && !smp_svg.empty()) svg = render_svg(s);
      }
      json out{{"chains", chains}, {"manifest", man.done()}};
      if (!smp_svg.empty())
        write_file(smp_svg, svg + "<!-- manifest " + out["manifest"].dump() + " -->\n");
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*c_or) {
      VertexModel m = load_model(or_model, man, or_n);
      json out{{"n", m.h.n}};
      if (or_event.empty()) {
        EnumerationReport rep = enumerate_vertex_model(m);
        out["partition"] = rep.partition;
        out["config_count"] = rep.config_count;
      } else {
        ConditionEvent ev;
        std::stringstream ss(or_event);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
          const auto colon = tok.find(':');
          if (colon == std::string::npos) throw IoError("--event expects vertex:config;...");
          ev.targets.push_back(
              {std::stoi(tok.substr(0, colon)), parse_config(tok.substr(colon + 1))});
        }
        out["probability"] = enumerate_conditional(m, ev);
      }
      out["manifest"] = man.done();
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
