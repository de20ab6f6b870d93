// cgmv command line front end: spectrum / simulate / verify / limit-measure /
// localization / compare, all emitting artifact + manifest pairs

#include <array>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <cgmv/cgmv.hpp>

namespace {

using cgmv::Cx;
using KV = std::vector<std::pair<std::string, std::string>>;

double parse_real(const std::string& s) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) throw cgmv::ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  size_t start = 0;
  while (true) {
    size_t c = s.find(',', start);
    out.push_back(parse_real(s.substr(start, c - start)));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

Cx<double> parse_cx(const std::string& s) {
  auto v = parse_reals(s);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw cgmv::ConfigError("expected RE or RE,IM, got '" + s + "'");
}

cgmv::Vec4c<double> parse_state4(const std::string& s) {
  auto v = parse_reals(s);
  cgmv::Vec4c<double> a;
  if (v.size() == 4)
    for (int i = 0; i < 4; ++i) a(i) = Cx<double>(v[size_t(i)], 0);
  else if (v.size() == 8)
    for (int i = 0; i < 4; ++i) a(i) = Cx<double>(v[size_t(2 * i)], v[size_t(2 * i + 1)]);
  else
    throw cgmv::ConfigError("coin-state needs 4 reals or 8 re,im values");
  return a;
}

std::array<double, 2> parse_pair(const std::string& s) {
  auto v = parse_reals(s);
  if (v.size() != 2) throw cgmv::ConfigError("expected two comma-separated numbers, got '" + s + "'");
  return {v[0], v[1]};
}

cgmv::WalkKind parse_kind(const std::string& s) {
  if (s == "I") return cgmv::WalkKind::TypeI;
  if (s == "II") return cgmv::WalkKind::TypeII;
  throw cgmv::ConfigError("type must be I or II, got '" + s + "'");
}

std::string b2s(bool b) { return b ? "true" : "false"; }

// the coin is either a JSON file or the canonical C(alpha) family
cgmv::QuantumCoin<double> resolve_coin(const std::string& coin_file, const std::string& alpha) {
  if (!coin_file.empty() && !alpha.empty())
    throw cgmv::ConfigError("--coin and --alpha are mutually exclusive");
  if (!coin_file.empty()) return cgmv::parse_coin_json<double>(cgmv::read_file(coin_file));
  if (!alpha.empty()) return cgmv::canonical_coin<double>(parse_cx(alpha));
  throw cgmv::ConfigError("need --coin FILE or --alpha RE,IM");
}

// write artifact + manifest, then re-read both through their validators
template <class Validator>
void emit(const std::string& out, const std::string& content, const std::string& command,
          const KV& config, const std::string& columns, Validator&& validate) {
  cgmv::write_file(out, content);
  validate(cgmv::read_file(out));
  std::string man_path = out + ".manifest.json";
  cgmv::write_file(man_path, cgmv::write_manifest(command, config, columns));
  cgmv::validate_manifest_json(cgmv::read_file(man_path));
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  std::string seq, p = "0,0", alphas, out, dump_polys;
  double rot = 0;
  long grid = 4096;
  long dump_count = 8;
  long seed = 0;
};

cgmv::VerblunskySeq<double> resolve_seq(const std::string& name, const std::string& p,
                                        const std::string& alphas) {
  if (name == "explicit") {
    if (alphas.empty()) throw cgmv::ConfigError("--seq explicit needs --alphas");
    auto v = parse_reals(alphas);
    if (v.size() % 2 != 0) throw cgmv::ConfigError("--alphas needs an even count of re,im values");
    std::vector<Cx<double>> w(v.size() / 2);
    for (size_t i = 0; i < w.size(); ++i) w[i] = Cx<double>(v[2 * i], v[2 * i + 1]);
    return cgmv::VerblunskySeq<double>::explicit_window(std::move(w));
  }
  Cx<double> pv = parse_cx(p);
  if (name == "zero") return cgmv::VerblunskySeq<double>::zero();
  if (name == "null-odd") return cgmv::VerblunskySeq<double>::null_odd(pv);
  if (name == "null-even") return cgmv::VerblunskySeq<double>::null_even(pv);
  if (name == "const") return cgmv::VerblunskySeq<double>::constant(pv);
  throw cgmv::ConfigError("unknown --seq '" + name + "'");
}

int run_spectrum(const SpectrumArgs& a) {
  auto seq = resolve_seq(a.seq, a.p, a.alphas);
  if (a.rot != 0) seq = cgmv::rotate_seq(seq, a.rot);
  auto mu = cgmv::extract_measure<double>(seq, {}, a.grid);
  KV cfg = {{"seq", a.seq},    {"p", a.p},
            {"alphas", a.alphas}, {"rot", cgmv::fmt17(a.rot)},
            {"grid", std::to_string(a.grid)}, {"out", a.out},
            {"seed", std::to_string(a.seed)}};
  emit(a.out, cgmv::write_measure_json(mu), "spectrum", cfg,
       "weight: [theta, w]; atoms: [theta, mass]",
       [](const std::string& t) { cgmv::validate_measure_json(t); });
  std::printf("spectrum: %zu atoms, total %s -> %s\n", mu.atoms.size(),
              cgmv::fmt17(mu.total).c_str(), a.out.c_str());
  if (!a.dump_polys.empty()) {
    if (a.dump_count < 1) throw cgmv::ConfigError("--dump-count must be positive");
    auto basis = cgmv::laurent_basis(seq, int(a.dump_count), cgmv::PolyKind::FirstKind);
    std::string csv = cgmv::csv_join({"poly", "exponent", "re", "im"});
    for (int j = 0; j < basis.n; ++j) {
      const auto& poly = basis.polys[size_t(j)];
      for (int e = -poly.K; e <= poly.K; ++e) {
        Cx<double> c = poly.coeff(e);
        if (c == Cx<double>(0)) continue;
        csv += cgmv::csv_join({std::to_string(j), std::to_string(e), cgmv::fmt17(c.real()),
                               cgmv::fmt17(c.imag())});
      }
    }
    cfg.emplace_back("dump_polys", a.dump_polys);
    cfg.emplace_back("dump_count", std::to_string(a.dump_count));
    emit(a.dump_polys, csv, "spectrum", cfg, "poly,exponent,re,im",
         [](const std::string& t) { cgmv::validate_csv(t, "poly,exponent,re,im"); });
    std::printf("polys: %ld Laurent polynomials -> %s\n", a.dump_count, a.dump_polys.c_str());
  }
  return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string type, coin_file, alpha, coin_state, gamma = "0,0", out = "dist.csv";
  long steps = -1;
  bool plot = false;
  long seed = 0;
};

int run_simulate(const SimulateArgs& a) {
  cgmv::WalkKind kind = parse_kind(a.type);
  auto coin = resolve_coin(a.coin_file, a.alpha);
  if (a.steps < 0) throw cgmv::ConfigError("--steps is required and must be >= 0");
  std::array<double, 2> gam = parse_pair(a.gamma);
  long xmax = a.steps + 4;
  cgmv::WalkState<double> st;
  if (kind == cgmv::WalkKind::TypeI) {
    std::string cs = a.coin_state.empty() ? "1,0,0,0" : a.coin_state;
    st = cgmv::initial_state_I<double>(parse_state4(cs), xmax);
  } else {
    std::array<double, 2> d{0, 0};
    if (!a.coin_state.empty()) d = parse_pair(a.coin_state);
    st = cgmv::initial_state_II<double>(d[0], d[1], xmax);
  }
  for (long t = 0; t < a.steps; ++t) st = cgmv::step(st, coin, gam);
  cgmv::MatR<double> dist = cgmv::distribution(st);

  std::string csv = "t,x,y,P\n", plot;
  for (long x = 0; x <= xmax; ++x)
    for (long y = 0; y <= xmax; ++y)
      if (dist(x, y) > 1e-14) {
        csv += cgmv::csv_join({std::to_string(st.time), std::to_string(x), std::to_string(y),
                               cgmv::fmt17(dist(x, y))});
        plot += std::to_string(x) + " " + std::to_string(y) + " " + cgmv::fmt17(dist(x, y)) + "\n";
      }
  KV cfg = {{"type", a.type},   {"coin", a.coin_file},
            {"alpha", a.alpha}, {"coin-state", a.coin_state},
            {"gamma", a.gamma}, {"steps", std::to_string(a.steps)},
            {"out", a.out},     {"emit-plot-data", b2s(a.plot)},
            {"seed", std::to_string(a.seed)}};
  emit(a.out, csv, "simulate", cfg, "t,x,y,P",
       [](const std::string& t) { cgmv::validate_csv(t, "t,x,y,P"); });
  if (a.plot) cgmv::write_file(a.out + ".plot.dat", plot);
  std::printf("simulate: %ld steps, norm %s -> %s\n", a.steps, cgmv::fmt17(st.norm_sq()).c_str(),
              a.out.c_str());
  return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string type = "I", coin_file, alpha, gamma = "0,0", out;
  bool correspondence = false;
  long dim = 64;
  long seed = 0;
};

int run_verify(const VerifyArgs& a) {
  if (!a.correspondence) throw cgmv::ConfigError("verify requires --correspondence");
  cgmv::WalkKind kind = parse_kind(a.type);
  auto coin = resolve_coin(a.coin_file, a.alpha);
  auto rep = cgmv::correspondence_residual<double>(kind, coin, parse_pair(a.gamma), a.dim);
  for (const auto& [desc, r] : rep.table)
    std::printf("  %-24s %s\n", cgmv::fmt17(r).c_str(), desc.c_str());
  std::printf("winning convention: %s\n", rep.convention.c_str());
  std::printf("residual: %s\n", cgmv::fmt17(rep.residual).c_str());
  if (rep.no_convention_fits) std::printf("NO CONVENTION FITS (residual > 1e-6)\n");
  if (!a.out.empty()) {
    std::string j = "{\n  \"residual\": " + cgmv::fmt17(rep.residual) + ",\n  \"convention\": \"" +
                    rep.convention + "\",\n  \"no_convention_fits\": " + b2s(rep.no_convention_fits) +
                    ",\n  \"table\": [\n";
    for (size_t i = 0; i < rep.table.size(); ++i) {
      j += "    [\"" + rep.table[i].first + "\", " + cgmv::fmt17(rep.table[i].second) + "]";
      j += i + 1 < rep.table.size() ? ",\n" : "\n";
    }
    j += "  ]\n}\n";
    KV cfg = {{"type", a.type},   {"coin", a.coin_file},
              {"alpha", a.alpha}, {"gamma", a.gamma},
              {"dim", std::to_string(a.dim)}, {"out", a.out},
              {"seed", std::to_string(a.seed)}};
    emit(a.out, j, "verify", cfg, "table: [convention, residual]", [](const std::string& t) {
      try {
        auto parsed = nlohmann::json::parse(t);
           (void)parsed;
      } catch (const nlohmann::json::exception& e) {
        throw cgmv::ConfigError(std::string("verify report is not valid JSON: ") + e.what());
      }
    });
  }
  return 0;
}

// ---- limit-measure ----------------------------------------------------------

struct LimitArgs {
  std::string type, a, b, coin_state = "1,0,0,0", out = "masses.csv";
  double theta = 0;
  long range = -1;
  long seed = 0;
};

int run_limit_measure(const LimitArgs& a) {
  cgmv::WalkKind kind = parse_kind(a.type);
  if (a.range < 0) throw cgmv::ConfigError("--range is required and must be >= 0");
  std::string csv, header;
  if (kind == cgmv::WalkKind::TypeI) {
    if (a.a.empty()) throw cgmv::ConfigError("--type I needs --a RE,IM");
    auto p = cgmv::LimitParamsI<double>::make(parse_cx(a.a), a.theta, parse_state4(a.coin_state));
    header = "x,y,mass";
    csv = header + "\n";
    for (long x = 0; x <= a.range; ++x)
      for (long y = 0; y <= a.range; ++y)
        csv += cgmv::csv_join({std::to_string(x), std::to_string(y),
                               cgmv::fmt17(cgmv::theorem1_mass(p, x, y))});
  } else {
    if (a.b.empty()) throw cgmv::ConfigError("--type II needs --b RE,IM");
    auto p = cgmv::LimitParamsII<double>::make(parse_cx(a.b));
    header = "x,y,mass_even,mass_odd";
    csv = header + "\n";
    for (long x = 0; x <= a.range; ++x)
      for (long y = 0; y <= a.range; ++y)
        csv += cgmv::csv_join({std::to_string(x), std::to_string(y),
                               cgmv::fmt17(cgmv::theorem3_mass(p, x, y, cgmv::Parity::Even)),
                               cgmv::fmt17(cgmv::theorem3_mass(p, x, y, cgmv::Parity::Odd))});
  }
  KV cfg = {{"type", a.type},        {"a", a.a},
            {"b", a.b},              {"coin-state", a.coin_state},
            {"theta", cgmv::fmt17(a.theta)}, {"range", std::to_string(a.range)},
            {"out", a.out},          {"seed", std::to_string(a.seed)}};
  emit(a.out, csv, "limit-measure", cfg, header,
       [&header](const std::string& t) { cgmv::validate_csv(t, header); });
  std::printf("limit-measure -> %s\n", a.out.c_str());
  return 0;
}

// ---- localization -----------------------------------------------------------

struct LocalizationArgs {
  std::string type = "II", out = "raster.csv";
  long raster = -1;
  long seed = 0;
};

int run_localization(const LocalizationArgs& a) {
  if (parse_kind(a.type) != cgmv::WalkKind::TypeII)
    throw cgmv::ConfigError("localization raster is defined for --type II");
  if (a.raster < 2) throw cgmv::ConfigError("--raster must be >= 2");
  std::string header = "x,y,paper_region,mass_criterion";
  std::string csv = header + "\n";
  for (long i = 0; i < a.raster; ++i)
    for (long j = 0; j < a.raster; ++j) {
      double x = -1 + 2.0 * double(i) / double(a.raster - 1);
      double y = -1 + 2.0 * double(j) / double(a.raster - 1);
      if (x * x + y * y >= 1) continue;
      auto [paper, mass] = cgmv::localizes_II<double>({x, y});
      csv += cgmv::csv_join({cgmv::fmt17(x), cgmv::fmt17(y), paper ? "1" : "0", mass ? "1" : "0"});
    }
  KV cfg = {{"type", a.type},
            {"raster", std::to_string(a.raster)},
            {"out", a.out},
            {"seed", std::to_string(a.seed)}};
  emit(a.out, csv, "localization", cfg, header,
       [&header](const std::string& t) { cgmv::validate_csv(t, header); });
  std::printf("localization raster -> %s\n", a.out.c_str());
  return 0;
}

// ---- compare ----------------------------------------------------------------

struct CompareArgs {
  std::string type, a, b, coin_state = "1,0,0,0", out = "report.json";
  long steps = 256, grid = 4096, kmax = 3;
  long seed = 0;
};

int run_compare(const CompareArgs& a) {
  cgmv::WalkKind kind = parse_kind(a.type);
  bool type_i = kind == cgmv::WalkKind::TypeI;
  if (type_i && a.a.empty()) throw cgmv::ConfigError("--type I needs --a RE,IM");
  if (!type_i && a.b.empty()) throw cgmv::ConfigError("--type II needs --b RE,IM");
  Cx<double> p = parse_cx(type_i ? a.a : a.b);
  if (std::abs(p) >= 1) throw cgmv::ConfigError("|parameter| must be < 1");

  auto seq = type_i ? cgmv::VerblunskySeq<double>::null_odd(p)
                    : cgmv::VerblunskySeq<double>::null_even(p);
  auto mu = cgmv::extract_measure<double>(seq, {}, a.grid);
  double atom_total = 0;
  for (const auto& at : mu.atoms) atom_total += at.second;

  auto coin = cgmv::canonical_coin<double>(-std::conj(p));
  std::array<double, 2> gam{0, 0};
  cgmv::WalkSeed<double> seed;
  if (type_i) seed.amps = parse_state4(a.coin_state);
  auto stats = cgmv::time_avg_return<double>(kind, coin, gam, seed, a.steps);
  bool sim_localized = stats.tail > 0.01;

  double nu = type_i ? cgmv::nu_I<double>(p) : cgmv::nu_II<double>(p);
  cgmv::VecR<double> profile;
  std::string prof_json = "[]", pred_json = "[]", err_json = "null";
  if (sim_localized) {
    profile = cgmv::decay_profile<double>(kind, coin, gam, seed, a.steps, a.kmax);
    prof_json = "[";
    pred_json = "[";
    double worst = 0;
    for (long k = 0; k <= a.kmax; ++k) {
      double pred = std::pow(nu * nu, double(k));
      prof_json += cgmv::fmt17(profile(k));
      pred_json += cgmv::fmt17(pred);
      if (k < a.kmax) prof_json += ", ", pred_json += ", ";
      if (pred > 0) worst = std::max(worst, std::abs(profile(k) - pred) / pred);
    }
    prof_json += "]";
    pred_json += "]";
    err_json = cgmv::fmt17(worst);
  }

  bool spectral_localized = !mu.atoms.empty();
  bool predicate, disputed = false;
  std::string predicates;
  if (type_i) {
    predicate = cgmv::localizes_I<double>(seed.amps, p, 0.0);
    predicates = "{\"corollary2\": " + b2s(predicate) + "}";
  } else {
    auto [paper, mass] = cgmv::localizes_II<double>(p);
    predicate = mass;
    disputed = paper != mass;
    predicates = "{\"paper_region\": " + b2s(paper) + ", \"mass_criterion\": " + b2s(mass) + "}";
  }

  std::string atoms_json = "[";
  for (size_t i = 0; i < mu.atoms.size(); ++i) {
    atoms_json += cgmv::json_pair(mu.atoms[i].first, mu.atoms[i].second);
    if (i + 1 < mu.atoms.size()) atoms_json += ", ";
  }
  atoms_json += "]";

  std::string j = "{\n";
  j += "  \"type\": \"" + a.type + "\",\n";
  j += "  \"parameter\": " + cgmv::json_pair(p.real(), p.imag()) + ",\n";
  j += "  \"spectral\": {\"atoms\": " + atoms_json + ", \"atom_total\": " + cgmv::fmt17(atom_total) +
       ", \"measure_total\": " + cgmv::fmt17(mu.total) + "},\n";
  j += "  \"simulated\": {\"cesaro\": " + cgmv::fmt17(stats.cesaro) +
       ", \"tail\": " + cgmv::fmt17(stats.tail) + ", \"localized\": " + b2s(sim_localized) +
       ", \"decay_profile\": " + prof_json + ", \"decay_prediction\": " + pred_json +
       ", \"decay_max_rel_err\": " + err_json + "},\n";
  j += "  \"predicates\": " + predicates + ",\n";
  j += "  \"agreement\": {\"spectral_vs_simulated\": " + b2s(spectral_localized == sim_localized) +
       ", \"predicate_vs_simulated\": " + b2s(predicate == sim_localized) +
       ", \"three_way\": " + b2s(spectral_localized == sim_localized && predicate == sim_localized) +
       ", \"disputed\": " + b2s(disputed) + "}\n}\n";

  KV cfg = {{"type", a.type},
            {"a", a.a},
            {"b", a.b},
            {"coin-state", a.coin_state},
            {"steps", std::to_string(a.steps)},
            {"grid", std::to_string(a.grid)},
            {"kmax", std::to_string(a.kmax)},
            {"out", a.out},
            {"seed", std::to_string(a.seed)}};
  emit(a.out, j, "compare", cfg, "report: spectral/simulated/predicates/agreement",
       [](const std::string& t) {
         try {
           auto parsed = nlohmann::json::parse(t);
           (void)parsed;
         } catch (const nlohmann::json::exception& e) {
           throw cgmv::ConfigError(std::string("compare report is not valid JSON: ") + e.what());
         }
       });
  std::printf("compare: atoms %zu, tail %s, predicate %s%s -> %s\n", mu.atoms.size(),
              cgmv::fmt17(stats.tail).c_str(), b2s(predicate).c_str(),
              disputed ? " (predicates disputed, simulation adjudicates)" : "", a.out.c_str());
  return 0;
}

// ---- config file injection --------------------------------------------------

// key=value lines become --key=value tokens inserted right after the
// subcommand, so explicit command-line flags win under TakeLast
std::vector<std::string> inject_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  size_t sub = 0;
  while (sub < args.size() && (args[sub].empty() || args[sub][0] == '-')) ++sub;
  if (sub == args.size()) return args;
  std::string path;
  for (size_t i = sub; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> out(args.begin(), args.begin() + long(sub) + 1);
  for (const auto& [k, v] : cgmv::parse_config_text(cgmv::read_file(path)))
    out.push_back(v.empty() ? "--" + k : "--" + k + "=" + v);
  out.insert(out.end(), args.begin() + long(sub) + 1, args.end());
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"CMV matrices, spectral measures, and quarter-plane quantum walks"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::string config_path;  // consumed in inject_config; registered so CLI11 accepts it

  SpectrumArgs sp;
  auto* c_sp = app.add_subcommand("spectrum", "extract the spectral measure of a Verblunsky sequence");
  c_sp->add_option("--seq", sp.seq, "zero | null-odd | null-even | const | explicit")->required();
  c_sp->add_option("--p", sp.p, "sequence parameter RE,IM")->capture_default_str();
  c_sp->add_option("--alphas", sp.alphas, "explicit window, flat re,im list");
  c_sp->add_option("--rot", sp.rot, "rotation phase w in alpha_j -> alpha_j e^{i(j+1)w}")->capture_default_str();
  c_sp->add_option("--grid", sp.grid, "angular grid size")->capture_default_str();
  c_sp->add_option("--out", sp.out, "output measure JSON")->required();
  c_sp->add_option("--dump-polys", sp.dump_polys, "also write the Laurent OPUC basis as CSV");
  c_sp->add_option("--dump-count", sp.dump_count, "how many basis polynomials to dump")->capture_default_str();
  c_sp->add_option("--seed", sp.seed, "sweep-order seed (recorded; sweeps are deterministic)")->capture_default_str();
  c_sp->add_option("--config", config_path, "key=value config file");

  SimulateArgs si;
  auto* c_si = app.add_subcommand("simulate", "run a quarter-plane quantum walk");
  c_si->add_option("--type", si.type, "I | II")->required();
  c_si->add_option("--coin", si.coin_file, "coin JSON file");
  c_si->add_option("--alpha", si.alpha, "canonical coin C(alpha), RE,IM");
  c_si->add_option("--steps", si.steps, "number of steps")->required();
  c_si->add_option("--coin-state", si.coin_state,
                   "Type I: 4 reals or 8 re,im; Type II: two phases d1,d2");
  c_si->add_option("--gamma", si.gamma, "Type II wall phases g1,g2")->capture_default_str();
  c_si->add_option("--out", si.out, "output distribution CSV")->capture_default_str();
  c_si->add_flag("--emit-plot-data", si.plot, "also write <out>.plot.dat for gnuplot");
  c_si->add_option("--seed", si.seed, "sweep-order seed")->capture_default_str();
  c_si->add_option("--config", config_path, "key=value config file");

  VerifyArgs ve;
  auto* c_ve = app.add_subcommand("verify", "check the walk/CMV correspondence");
  c_ve->add_flag("--correspondence", ve.correspondence, "compare walk matrix against Lambda C Lambda*");
  c_ve->add_option("--type", ve.type, "I | II")->capture_default_str();
  c_ve->add_option("--coin", ve.coin_file, "coin JSON file");
  c_ve->add_option("--alpha", ve.alpha, "canonical coin C(alpha), RE,IM");
  c_ve->add_option("--gamma", ve.gamma, "Type II wall phases g1,g2")->capture_default_str();
  c_ve->add_option("--dim", ve.dim, "chain truncation dimension")->capture_default_str();
  c_ve->add_option("--out", ve.out, "optional JSON report path");
  c_ve->add_option("--seed", ve.seed, "sweep-order seed")->capture_default_str();
  c_ve->add_option("--config", config_path, "key=value config file");

  LimitArgs li;
  auto* c_li = app.add_subcommand("limit-measure", "tabulate the limit-distribution mass formulas");
  c_li->add_option("--type", li.type, "I | II")->required();
  c_li->add_option("--a", li.a, "Type I Verblunsky parameter RE,IM");
  c_li->add_option("--b", li.b, "Type II Verblunsky parameter RE,IM");
  c_li->add_option("--coin-state", li.coin_state, "Type I coin state")->capture_default_str();
  c_li->add_option("--theta", li.theta, "Type I phase theta")->capture_default_str();
  c_li->add_option("--range", li.range, "tabulate x, y in [0, range]")->required();
  c_li->add_option("--out", li.out, "output CSV")->capture_default_str();
  c_li->add_option("--seed", li.seed, "sweep-order seed")->capture_default_str();
  c_li->add_option("--config", config_path, "key=value config file");

  LocalizationArgs lo;
  auto* c_lo = app.add_subcommand("localization", "raster the Corollary 4 predicates over the disk");
  c_lo->add_option("--type", lo.type, "II")->capture_default_str();
  c_lo->add_option("--raster", lo.raster, "grid points per axis")->required();
  c_lo->add_option("--out", lo.out, "output CSV")->capture_default_str();
  c_lo->add_option("--seed", lo.seed, "sweep-order seed")->capture_default_str();
  c_lo->add_option("--config", config_path, "key=value config file");

  CompareArgs co;
  auto* c_co = app.add_subcommand("compare", "cross-validate spectrum, simulation, and predicates");
  c_co->add_option("--type", co.type, "I | II")->required();
  c_co->add_option("--a", co.a, "Type I parameter RE,IM (null-odd sequence)");
  c_co->add_option("--b", co.b, "Type II parameter RE,IM (null-even sequence)");
  c_co->add_option("--coin-state", co.coin_state, "Type I walk seed")->capture_default_str();
  c_co->add_option("--steps", co.steps, "simulation horizon T")->capture_default_str();
  c_co->add_option("--grid", co.grid, "spectrum grid size")->capture_default_str();
  c_co->add_option("--kmax", co.kmax, "diagonal decay range")->capture_default_str();
  c_co->add_option("--out", co.out, "output report JSON")->capture_default_str();
  c_co->add_option("--seed", co.seed, "sweep-order seed")->capture_default_str();
  c_co->add_option("--config", config_path, "key=value config file");

  std::vector<std::string> args = inject_config(argc, argv);
  try {
    // CLI11 parses reversed vectors
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (c_sp->parsed()) return run_spectrum(sp);
  if (c_si->parsed()) return run_simulate(si);
  if (c_ve->parsed()) return run_verify(ve);
  if (c_li->parsed()) return run_limit_measure(li);
  if (c_lo->parsed()) return run_localization(lo);
  return run_compare(co);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cgmv::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
