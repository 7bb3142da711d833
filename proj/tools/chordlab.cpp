// chordlab: enumerate partial chord diagrams, evolve cut-and-join series,
// compare the two, and check the Miwa-derivative identities numerically.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chordlab/chordlab.hpp"

namespace {

using namespace chordlab;

constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

// Desk-scale ceilings.
constexpr int kMaxSitesOriented = 14;
constexpr int kMaxSitesNonOriented = 12;
constexpr int kMaxYOrder = 8;
constexpr int kMaxBackbones = 8;

struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_backbones(const std::vector<std::string>& groups) {
  std::vector<int> lengths;
  for (const auto& g : groups) {
    std::stringstream ss(g);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw InvalidConfig("empty backbone length in '" + g + "'");
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw InvalidConfig("bad backbone length '" + item + "'");
      }
      if (used != item.size() || v < 0) throw InvalidConfig("bad backbone length '" + item + "'");
      lengths.push_back(v);
    }
  }
  return lengths;
}

std::optional<int> parse_chords(const std::string& text) {
  if (text == "all") return std::nullopt;
  std::size_t used = 0;
  int k = -1;
  try {
    k = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw InvalidConfig("--chords expects an integer or 'all'");
  }
  if (used != text.size() || k < 0) throw InvalidConfig("--chords expects an integer or 'all'");
  return k;
}

int site_ceiling(Orientation mode) { return mode == Orientation::Oriented ? kMaxSitesOriented : kMaxSitesNonOriented; }

void write_json(const Json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << doc.dump(2) << "\n";
}

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidConfig("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw InvalidConfig(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
  std::vector<std::string> backbones;
  std::string chords = "all";
  std::string mode = "oriented";
  std::string spectrum = "lp";
  bool connected = false;
  bool sweep = false;
  int bmax = 1;
  int sitemax = 4;
  std::string out;
};

int run_enumerate(const EnumerateArgs& a, int threads) {
  const Orientation mode = parse_orientation(a.mode);
  CensusBundle bundle;
  bundle.mode = mode;
  bundle.spectrum = parse_spectrum(a.spectrum);
  bundle.connected_only = a.connected;
  if (a.sweep) {
    if (!a.backbones.empty()) throw InvalidConfig("--sweep and --backbones are exclusive");
    if (a.chords != "all") throw InvalidConfig("--sweep enumerates every chord count");
    if (a.bmax < 1 || a.bmax > kMaxBackbones) throw InvalidConfig("--bmax out of range");
    if (a.sitemax < 0 || a.sitemax > site_ceiling(mode)) throw InvalidConfig("--sitemax out of range");
    Truncation t{a.sitemax / 2, a.bmax, a.sitemax};
    bundle.truncation = t;
    for (const auto& block : backbone_blocks(a.bmax, a.sitemax)) {
      bundle.blocks.push_back(census(EnumerationSpec{block, std::nullopt, mode, a.connected}, threads));
    }
  } else {
    EnumerationSpec spec{parse_backbones(a.backbones), parse_chords(a.chords), mode, a.connected};
    if (spec.backbone_lengths.empty()) throw InvalidConfig("--backbones is required");
    if (spec.site_total() > site_ceiling(mode)) throw InvalidConfig("backbones exceed the enumeration ceiling");
    bundle.blocks.push_back(census(spec, threads));
  }
  write_json(census_bundle_to_json(bundle), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct EvolveArgs {
  std::string model = "lp";
  std::string mode = "oriented";
  int ymax = 2;
  int bmax = 1;
  std::optional<int> sitemax;
  std::string out;
};

int run_evolve(const EvolveArgs& a) {
  const Model model = parse_model(a.model);
  const Orientation mode = parse_orientation(a.mode);
  if (a.ymax < 0 || a.ymax > kMaxYOrder) throw InvalidConfig("--ymax out of range");
  if (a.bmax < 1 || a.bmax > kMaxBackbones) throw InvalidConfig("--bmax out of range");
  const int sitemax = a.sitemax.value_or(2 * a.ymax);
  if (sitemax < 0 || sitemax > site_ceiling(mode)) throw InvalidConfig("--sitemax out of range");
  Truncation t{a.ymax, a.bmax, std::nullopt};
  if (model != Model::Length) t.site_max = sitemax;
  GradedSeries z = evolve(assemble_operator(model, mode), initial_condition(model, mode, t));
  write_json(series_to_json(SeriesDocument{model, mode, z}), a.out);
  return 0;
}

// ---------------------------------------------------------------------------

// A document as a series in a given model; censuses are assembled into Z.
SeriesDocument as_series(const Json& doc, std::optional<Model> target) {
  const std::string kind = doc.value("kind", std::string());
  if (kind == "series") return series_from_json(doc);
  if (kind != "census") throw InvalidConfig("unknown document kind '" + kind + "'");
  CensusBundle b = census_bundle_from_json(doc);
  if (!b.truncation) throw InvalidConfig("only sweep censuses (enumerate --sweep) can be compared with a series");
  if (b.spectrum != Spectrum::LengthAndPoint || b.connected_only) {
    throw InvalidConfig("census must carry the lp spectrum of all diagrams");
  }
  GradedSeries z = assemble_Z_from_census(b.blocks, *b.truncation);
  const Model m = target.value_or(Model::LengthAndPoint);
  if (m == Model::Point) z = project_point(z);
  if (m == Model::Length) z = uniform_s(project_length(z));
  return {m, b.mode, z};
}

int compare_censuses(const CensusBundle& l, const CensusBundle& r) {
  if (l.mode != r.mode) throw InvalidConfig("orientation mismatch");
  std::map<std::vector<int>, Census> right;
  for (const auto& c : r.blocks) {
    auto key = c.spec.backbone_lengths;
    std::sort(key.begin(), key.end());
    right[key] = c.marginal(l.spectrum == r.spectrum ? l.spectrum : Spectrum::None);
  }
  for (const auto& c : l.blocks) {
    auto key = c.spec.backbone_lengths;
    std::sort(key.begin(), key.end());
    auto it = right.find(key);
    if (it == right.end()) continue;
    Census left = c.marginal(l.spectrum == r.spectrum ? l.spectrum : Spectrum::None);
    if (left.entries != it->second.entries) {
      std::cout << "mismatch in block " << tuple_string(key) << "\n";
      return kExitMismatch;
    }
  }
  std::cout << "censuses agree\n";
  return 0;
}

int run_compare(const std::string& left_path, const std::string& right_path) {
  const Json lj = read_json(left_path), rj = read_json(right_path);
  if (lj.value("kind", std::string()) == "census" && rj.value("kind", std::string()) == "census") {
    return compare_censuses(census_bundle_from_json(lj), census_bundle_from_json(rj));
  }
  std::optional<Model> target;
  if (lj.value("kind", std::string()) == "series") target = parse_model(lj.at("model").get<std::string>());
  if (rj.value("kind", std::string()) == "series") target = parse_model(rj.at("model").get<std::string>());
  SeriesDocument l = as_series(lj, target), r = as_series(rj, target);
  if (l.mode != r.mode) throw InvalidConfig("orientation mismatch");
  if (l.model != r.model) throw InvalidConfig("model mismatch");
  const Truncation t = intersect(l.series.truncation(), r.series.truncation());
  const GradedSeries a = l.series.with_truncation(t), b = r.series.with_truncation(t);
  std::set<Monomial> keys;
  for (const auto& [m, c] : a.terms()) keys.insert(m);
  for (const auto& [m, c] : b.terms()) keys.insert(m);
  for (const auto& m : keys) {
    const LaurentCoeff ca = a.coefficient_of(m), cb = b.coefficient_of(m);
    if (!(ca == cb)) {
      std::cout << "first mismatch at " << to_string(m) << ": left " << to_string(ca) << ", right " << to_string(cb)
                << "\n";
      return kExitMismatch;
    }
  }
  std::cout << "series agree on " << keys.size() << " monomials (y<=" << t.y_max << ", b<=" << t.b_max;
  if (t.site_max) std::cout << ", sites<=" << *t.site_max;
  std::cout << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct LemmaArgs {
  std::string which = "all";
  std::vector<int> sizes{3, 4};
  int trials = 20;
  double tol = 1e-6;
  std::uint64_t seed = 7;
  double step = 1e-4;
  std::string out;
};

int run_check_lemmas(const LemmaArgs& a) {
  std::vector<LemmaVariant> which;
  if (a.which == "all") {
    which = all_lemma_variants();
  } else {
    which.push_back(parse_lemma_variant(a.which));
  }
  for (int n : a.sizes) {
    if (n < 2 || n > 6) throw InvalidConfig("--n must lie in 2..6");
  }
  if (a.trials < 1) throw InvalidConfig("--trials must be positive");
  if (!(a.step > 0)) throw InvalidConfig("--step must be positive");
  Json doc;
  doc["version"] = kFormatVersion;
  doc["kind"] = "lemma-report";
  doc["seed"] = a.seed;
  doc["tol"] = a.tol;
  doc["step"] = a.step;
  Json reports = Json::array();
  bool all_pass = true;
  for (auto v : which) {
    for (int n : a.sizes) {
      LemmaReport r = check_lemma(v, n, a.trials, a.tol, a.seed, a.step);
      all_pass = all_pass && r.pass;
      reports.push_back(
          {{"lemma", to_string(v)}, {"n", n}, {"trials", r.trials}, {"max_rel_err", r.max_rel_err}, {"pass", r.pass}});
    }
  }
  doc["reports"] = reports;
  doc["pass"] = all_pass;
  write_json(doc, a.out);
  return all_pass ? 0 : kExitMismatch;
}

// ---------------------------------------------------------------------------

int run_repro() {
  bool ok = true;
  auto item = [&](const std::string& label, bool pass) {
    std::cout << label << " : " << (pass ? "PASS" : "FAIL") << "\n";
    ok = ok && pass;
  };

  DiagramType big;
  big.mode = Orientation::Oriented;
  big.euler_genus = 1;
  big.k = 6;
  big.l = 2;
  big.n = 4;
  big.backbone_spectrum = {{6, 1}, {8, 1}};
  big.point_spectrum = {{0, 2}, {1, 2}};
  big.length_spectrum = {{1, 1}, {2, 2}, {9, 1}};
  big.lp_spectrum = {{CyclicTuple({1}, Symmetry::Necklace), 1},
                     {CyclicTuple({0, 0}, Symmetry::Necklace), 2},
                     {CyclicTuple({0, 0, 0, 0, 0, 1, 0, 0, 0}, Symmetry::Necklace), 1}};
  item("genus-1 type on backbones of length 6 and 8 with 6 chords satisfies every sum rule",
       type_is_consistent(big));

  auto genus_counts = [](int len, int k) {
    return census(EnumerationSpec{{len}, k, Orientation::Oriented, false}).by_genus();
  };
  auto m4 = genus_counts(4, 2);
  item("<N Tr M^4> = 2N^2+1", m4.size() == 2 && m4[{2, 0}] == 2 && m4[{2, 1}] == 1);
  auto m6 = genus_counts(6, 3);
  item("<N Tr M^6> = 5N^3+10N", m6.size() == 2 && m6[{3, 0}] == 5 && m6[{3, 1}] == 10);

  Census c41 = census(EnumerationSpec{{4}, 1, Orientation::Oriented, false}).marginal(Spectrum::Point);
  std::map<std::map<int, int>, BigInt> point_types;
  for (const auto& [t, n] : c41.entries) point_types[t.point_spectrum] += n;
  const std::map<int, int> a{{0, 1}, {2, 1}}, b{{1, 2}};
  item("one chord on a 4-site backbone: point types {n0=1,n2=1} and {n1=2} only, 6 diagrams",
       point_types.size() == 2 && point_types.count(a) && point_types.count(b) && c41.total() == 6);

  auto twisted = census(EnumerationSpec{{2}, 1, Orientation::NonOriented, false}).by_genus();
  item("real symmetric <N Tr M^2> = N^2+N", twisted.size() == 2 && twisted[{1, 0}] == 1 && twisted[{1, 1}] == 1);

  return ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chordlab: partial chord diagram enumeration and cut-and-join series"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags win");
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for enumeration")
      ->envname("CHORDLAB_THREADS")
      ->check(CLI::Range(1, 256));

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "census of diagrams for given backbones");
  enumerate->add_option("--backbones", en.backbones, "backbone lengths, comma list; repeatable")->take_all();
  enumerate->add_option("--chords", en.chords, "chord count or 'all'");
  enumerate->add_option("--mode", en.mode, "oriented | nonoriented");
  enumerate->add_option("--spectrum", en.spectrum, "none | point | length | lp");
  enumerate->add_flag("--connected", en.connected, "connected diagrams only");
  enumerate->add_flag("--sweep", en.sweep, "every backbone block within --bmax/--sitemax, all chord counts");
  enumerate->add_option("--bmax", en.bmax, "sweep: maximum number of backbones");
  enumerate->add_option("--sitemax", en.sitemax, "sweep: maximum total number of sites");
  enumerate->add_option("--out", en.out, "output file (default stdout)");

  EvolveArgs ev;
  auto* evolve_cmd = app.add_subcommand("evolve", "solve the cut-and-join equation as a truncated series");
  evolve_cmd->add_option("--model", ev.model, "point | length | lp");
  evolve_cmd->add_option("--mode,--orientation", ev.mode, "oriented | nonoriented");
  evolve_cmd->add_option("--ymax", ev.ymax, "maximum chord count");
  evolve_cmd->add_option("--bmax", ev.bmax, "maximum number of backbones");
  evolve_cmd->add_option("--sitemax", ev.sitemax, "maximum total number of sites (default 2*ymax)");
  evolve_cmd->add_option("--out", ev.out, "output file (default stdout)");

  std::string left, right;
  auto* compare = app.add_subcommand("compare", "diff two series or census documents");
  compare->add_option("--left", left, "first document")->required();
  compare->add_option("--right", right, "second document")->required();

  LemmaArgs lm;
  auto* lemmas = app.add_subcommand("check-lemmas", "finite-difference check of the Miwa-derivative identities");
  lemmas->add_option("--which", lm.which, "all or one of point-oriented, ..., lp-nonoriented");
  lemmas->add_option("--n", lm.sizes, "matrix sizes")->take_all();
  lemmas->add_option("--trials", lm.trials, "random trials per lemma and size");
  lemmas->add_option("--tol", lm.tol, "relative error tolerance");
  lemmas->add_option("--seed", lm.seed, "random seed");
  lemmas->add_option("--step", lm.step, "finite-difference step");
  lemmas->add_option("--out", lm.out, "output file (default stdout)");

  auto* repro = app.add_subcommand("repro", "run the bundled worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*enumerate) return run_enumerate(en, threads);
    if (*evolve_cmd) return run_evolve(ev);
    if (*compare) return run_compare(left, right);
    if (*lemmas) return run_check_lemmas(lm);
    if (*repro) return run_repro();
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Json::exception& e) {
    std::cerr << "invalid document: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitInvalid;
}
