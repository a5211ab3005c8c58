#include "mgonal/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mgonal/cache.hpp"
#include "mgonal/escalator.hpp"
#include "mgonal/local_rep.hpp"
#include "mgonal/reduction.hpp"
#include "mgonal/report.hpp"
#include "mgonal/represent.hpp"

namespace mgonal::cli {

using report::json;

std::vector<i64> parse_coeffs(const std::string& s) {
  std::vector<i64> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    const auto tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    i64 v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || end != tok.data() + tok.size())
      throw std::invalid_argument("malformed coefficient list: '" + s + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void emit(json j) {
    if (cfg_.stamp) j["generated_at"] = timestamp();
    out_ << j.dump(2) << '\n';
  }
  void text(const std::string& s) {
    out_ << s;
    if (cfg_.stamp) out_ << "generated_at " << timestamp() << '\n';
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

MgonalForm form_of(const RunConfig& cfg) {
  if (cfg.coeffs.empty()) throw UsageError(cfg.command + " needs --coeffs");
  return MgonalForm(cfg.m, cfg.coeffs);
}

void check_bound(const RunConfig& cfg) {
  if (cfg.bound < 1) throw UsageError("--bound must be positive");
  if (cfg.bound > cfg.max_bound)
    throw ResourceError("bound " + std::to_string(cfg.bound) + " exceeds the hard cap " + std::to_string(cfg.max_bound));
}

std::optional<SetCache> make_cache(const RunConfig& cfg) {
  if (!cfg.cache_dir) return std::nullopt;
  return SetCache(*cfg.cache_dir, SieveLimits{cfg.max_bound});
}

json form_json(const MgonalForm& f) { return {{"m", f.m()}, {"coeffs", report::coeffs(f)}}; }

std::string witness_text(std::span<const i64> x) { return report::join(x, ' '); }

void cmd_eval(const RunConfig& cfg, Emitter& e) {
  const i64 v = polygonal_number(cfg.m, cfg.x);
  if (cfg.format == Format::Json)
    e.emit({{"m", cfg.m}, {"x", cfg.x}, {"value", v}});
  else
    e.text(std::to_string(v) + "\n");
}

void cmd_invert(const RunConfig& cfg, Emitter& e) {
  const auto x = is_polygonal(cfg.m, cfg.N, cfg.domain);
  if (cfg.format == Format::Json)
    e.emit({{"m", cfg.m}, {"N", cfg.N}, {"domain", to_string(cfg.domain)}, {"x", x ? json(*x) : json(nullptr)}});
  else
    e.text((x ? std::to_string(*x) : std::string("none")) + "\n");
}

void cmd_represent(const RunConfig& cfg, Emitter& e) {
  const auto form = form_of(cfg);
  const auto w = represents(form, cfg.N, cfg.domain);
  if (cfg.format == Format::Json) {
    json j = form_json(form);
    j["N"] = cfg.N;
    j["domain"] = to_string(cfg.domain);
    j["witness"] = w ? report::witness(*w) : json(nullptr);
    e.emit(j);
  } else {
    e.text((w ? witness_text(*w) : std::string("none")) + "\n");
  }
}

void cmd_set(const RunConfig& cfg, Emitter& e) {
  RepresentedSet set = [&] {
    if (cfg.read_file) return load_set(*cfg.read_file);
    check_bound(cfg);
    const auto form = form_of(cfg);
    if (auto cache = make_cache(cfg)) return cache->get(form, cfg.bound, cfg.domain);
    return represented_set(form, cfg.bound, cfg.domain, SieveLimits{cfg.max_bound});
  }();
  if (cfg.write_file) save_set_atomic(*cfg.write_file, set);

  std::vector<i64> missing;
  for (i64 N = 1; N <= set.bound; ++N)
    if (!set.contains(N)) missing.push_back(N);
  const auto count = static_cast<i64>(set.bits.count());
  constexpr std::size_t shown = 1000;
  const bool truncated = missing.size() > shown;
  if (truncated) missing.resize(shown);

  if (cfg.format == Format::Json) {
    json j = form_json(set.form);
    j["domain"] = to_string(set.domain);
    j["bound"] = set.bound;
    j["count"] = count;
    j["missing"] = missing;
    j["missing_truncated"] = truncated;
    e.emit(j);
  } else if (cfg.format == Format::Csv) {
    std::string s = "N\n";
    for (i64 N : missing) s += std::to_string(N) + "\n";
    e.text(s);
  } else {
    std::string s = set.form.to_string() + " " + to_string(set.domain) + " bound " + std::to_string(set.bound) +
                    " count " + std::to_string(count) + "\nmissing";
    for (i64 N : missing) s += " " + std::to_string(N);
    if (truncated) s += " ...";
    e.text(s + "\n");
  }
}

void cmd_truant(const RunConfig& cfg, Emitter& e) {
  check_bound(cfg);
  const auto form = form_of(cfg);
  const SieveLimits limits{cfg.max_bound};
  const i64 cap = std::min(cfg.escalate_cap, cfg.max_bound);
  TruantResult r = truant_up_to(form, cfg.bound, cfg.domain, limits);
  while (!r.found() && r.bound < cap) r = truant_up_to(form, std::min(cap, 2 * r.bound), cfg.domain, limits);
  if (cfg.format == Format::Json) {
    json j = form_json(form);
    j["domain"] = to_string(cfg.domain);
    j["bound"] = r.bound;
    j["truant"] = r.truant ? json(*r.truant) : json(nullptr);
    e.emit(j);
  } else {
    e.text(r.truant ? std::to_string(*r.truant) + "\n" : "none up to " + std::to_string(r.bound) + "\n");
  }
}

void tree_text(const EscalatorNode& n, std::string& s) {
  s += std::string(2 * n.depth(), ' ') + n.form.to_string();
  if (n.truant) s += " truant " + std::to_string(*n.truant);
  if (n.universal_up_to) s += " universal up to " + std::to_string(*n.universal_up_to);
  if (n.rule_divergence) s += " [truant != sum+1]";
  s += '\n';
  for (const auto& c : n.children) tree_text(c, s);
}

void cmd_tree(const RunConfig& cfg, Emitter& e) {
  check_bound(cfg);
  const auto root = build_tree(cfg.m, cfg.depth, cfg.bound, TreeOptions{1'000'000, SieveLimits{cfg.max_bound}});
  if (cfg.format == Format::Json) {
    e.emit(report::tree(root, cfg.m, cfg.bound));
  } else {
    std::string s;
    tree_text(root, s);
    e.text(s);
  }
}

void cmd_local(const RunConfig& cfg, Emitter& e) {
  const auto form = form_of(cfg);
  if (cfg.p != 0) {
    if (!arith::is_prime(cfg.p)) throw UsageError("--p must be prime");
    const auto v = mgonal_represents_zp(form, cfg.N, cfg.p);
    if (cfg.format == Format::Json)
      e.emit(report::local_verdict(v));
    else
      e.text(std::string(v.represented ? "yes" : "no") + " " + to_string(v.reason) + "\n");
    return;
  }
  const auto profile = locally_represented(form, cfg.N);
  if (cfg.format == Format::Json) {
    e.emit(report::local_profile(profile));
  } else {
    std::string s = std::string(profile.overall ? "locally represented" : "not locally represented") + "\n";
    for (const auto& v : profile.verdicts)
      s += "p=" + std::to_string(v.p) + " " + (v.represented ? "yes" : "no") + " " + to_string(v.reason) + "\n";
    e.text(s);
  }
}

void cmd_exceptions(const RunConfig& cfg, Emitter& e) {
  check_bound(cfg);
  const auto form = form_of(cfg);
  auto cache = make_cache(cfg);
  const auto rep = exceptions(form, cfg.bound, cache ? &*cache : nullptr, SieveLimits{cfg.max_bound});
  if (cfg.format == Format::Json) {
    e.emit(report::exceptions(rep));
  } else if (cfg.format == Format::Csv) {
    std::ostringstream os;
    report::exceptions_csv(os, rep);
    e.text(os.str());
  } else {
    std::string s = form.to_string() + " exceptions up to " + std::to_string(cfg.bound) + ":";
    for (i64 N : rep.exceptions) s += " " + std::to_string(N);
    e.text(s + "\n");
  }
}

void cmd_kwindow(const RunConfig& cfg, Emitter& e) {
  const auto form = form_of(cfg);
  const auto d = decompose(form.m(), cfg.N);
  const auto w = k_window(form, d.A, d.B, cfg.C);
  json j = report::k_window(w, form, d.A, d.B);
  j["N"] = cfg.N;
  if (cfg.format == Format::Json) {
    e.emit(j);
  } else {
    auto fmt = [](const json& b) { return b["approx"].is_null() ? std::string("none") : b["approx"].dump(); };
    e.text("status " + std::string(to_string(w.status)) + "\nalpha (" + fmt(j["alpha_minus"]) + ", " +
           fmt(j["alpha_plus"]) + ")\nbeta_plus " + fmt(j["beta_plus"]) + "\n");
  }
}

void cmd_feasible_k(const RunConfig& cfg, Emitter& e) {
  const auto form = form_of(cfg);
  const auto ks = feasible_k(form, cfg.N, cfg.C, cfg.k_max);
  if (cfg.format == Format::Json) {
    json rows = json::array();
    for (const auto& f : ks) rows.push_back({{"k", f.k}, {"x", f.x}});
    json j = form_json(form);
    j["N"] = cfg.N;
    j["C"] = cfg.C;
    j["feasible"] = rows;
    e.emit(j);
  } else if (cfg.format == Format::Csv) {
    std::string s = "k,x\n";
    for (const auto& f : ks) s += std::to_string(f.k) + "," + report::join(f.x, ';') + "\n";
    e.text(s);
  } else {
    std::string s;
    for (const auto& f : ks) s += "k=" + std::to_string(f.k) + " x=" + witness_text(f.x) + "\n";
    e.text(s.empty() ? "none\n" : s);
  }
}

void cmd_gamma(const RunConfig& cfg, Emitter& e) {
  check_bound(cfg);
  const auto g = gamma_estimate(cfg.m, cfg.bound, cfg.depth, TreeOptions{1'000'000, SieveLimits{cfg.max_bound}});
  if (cfg.format == Format::Json) {
    e.emit({{"m", cfg.m},
            {"bound", cfg.bound},
            {"depth", cfg.depth},
            {"gamma_lower", g.gamma_lower},
            {"largest_truant_node", g.largest_truant_node ? report::coeffs(*g.largest_truant_node) : json(nullptr)}});
  } else {
    e.text("gamma_lower " + std::to_string(g.gamma_lower) +
           (g.largest_truant_node ? " at " + g.largest_truant_node->to_string() : std::string()) + "\n");
  }
}

void cmd_growth(const RunConfig& cfg, Emitter& e) {
  check_bound(cfg);
  if (cfg.coeffs.empty()) throw UsageError("growth needs --coeffs");
  auto cache = make_cache(cfg);
  const auto probe = growth_probe(cfg.coeffs, cfg.m_lo, cfg.m_hi, cfg.bound, cfg.jobs, cache ? &*cache : nullptr,
                                  SieveLimits{cfg.max_bound});
  if (cfg.format == Format::Json) {
    e.emit(report::growth_summary(probe));
  } else {
    std::ostringstream os;
    report::growth_csv(os, probe);
    e.text(os.str());
  }
}

void cmd_td5(const RunConfig& cfg, Emitter& e) {
  const auto tuples = t_d5();
  if (cfg.format == Format::Json) {
    json rows = json::array();
    for (const auto& t : tuples) {
      json row{{"coeffs", t}};
      if (cfg.check_local) row["locally_universal"] = local_universal_quad(t);
      rows.push_back(row);
    }
    e.emit({{"count", tuples.size()}, {"tuples", rows}});
  } else {
    std::string s = cfg.format == Format::Csv ? (cfg.check_local ? "coeffs,locally_universal\n" : "coeffs\n") : "";
    const char sep = cfg.format == Format::Csv ? ';' : ',';
    for (const auto& t : tuples) {
      s += report::join(t, sep);
      if (cfg.check_local) s += local_universal_quad(t) ? ",true" : ",false";
      s += '\n';
    }
    e.text(s);
  }
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& out) {
  Emitter e(cfg, out);
  const auto& c = cfg.command;
  if (c == "eval") return cmd_eval(cfg, e);
  if (c == "invert") return cmd_invert(cfg, e);
  if (c == "represent") return cmd_represent(cfg, e);
  if (c == "set") return cmd_set(cfg, e);
  if (c == "truant") return cmd_truant(cfg, e);
  if (c == "tree") return cmd_tree(cfg, e);
  if (c == "local") return cmd_local(cfg, e);
  if (c == "exceptions") return cmd_exceptions(cfg, e);
  if (c == "kwindow") return cmd_kwindow(cfg, e);
  if (c == "feasible-k") return cmd_feasible_k(cfg, e);
  if (c == "gamma") return cmd_gamma(cfg, e);
  if (c == "growth") return cmd_growth(cfg, e);
  if (c == "td5") return cmd_td5(cfg, e);
  throw UsageError("unknown command '" + c + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string coeffs, domain = "nonneg", format = "text", output, cache_dir, write_file, read_file;

  CLI::App app{"m-gonal form representation toolkit", "mgonal"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto with_format = [&](CLI::App* s) {
    s->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--output", output, "write the report here instead of stdout");
    s->add_flag("--stamp", cfg.stamp, "add a generation timestamp");
  };
  auto with_m = [&](CLI::App* s) { s->add_option("--m", cfg.m, "polygon order, m >= 3")->required(); };
  auto with_coeffs = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--coeffs", coeffs, "comma separated positive coefficients");
    if (required) o->required();
  };
  auto with_domain = [&](CLI::App* s) {
    s->add_option("--domain", domain, "nonneg or int")->check(CLI::IsMember({"nonneg", "int"}));
  };
  auto with_bound = [&](CLI::App* s, i64 dflt) {
    cfg.bound = dflt;
    s->add_option("--bound", cfg.bound, "search bound")->capture_default_str();
    s->add_option("--max-bound", cfg.max_bound, "hard cap on sieve bounds")->capture_default_str();
  };
  auto with_cache = [&](CLI::App* s) {
    s->add_option("--cache-dir", cache_dir, "directory for sieve caches (MGONAL_CACHE_DIR overrides)");
  };

  auto* eval = app.add_subcommand("eval", "P_m(x)");
  with_m(eval);
  eval->add_option("--x", cfg.x)->required();
  with_format(eval);

  auto* invert = app.add_subcommand("invert", "solve P_m(x) = N");
  with_m(invert);
  invert->add_option("--N", cfg.N)->required();
  with_domain(invert);
  with_format(invert);

  auto* represent = app.add_subcommand("represent", "find x with sum a_i P_m(x_i) = N");
  with_m(represent);
  with_coeffs(represent, true);
  represent->add_option("--N", cfg.N)->required();
  with_domain(represent);
  with_format(represent);

  auto* set = app.add_subcommand("set", "represented set up to a bound");
  set->add_option("--m", cfg.m);
  with_coeffs(set, false);
  with_bound(set, 1000);
  with_domain(set);
  with_cache(set);
  set->add_option("--write", write_file, "save the set as an MGRS file");
  set->add_option("--read", read_file, "load an MGRS file instead of sieving");
  with_format(set);

  auto* truant = app.add_subcommand("truant", "smallest non-represented positive integer");
  with_m(truant);
  with_coeffs(truant, true);
  with_bound(truant, 1'000'000);
  truant->add_option("--escalate-cap", cfg.escalate_cap, "double the bound up to this value");
  with_domain(truant);
  with_format(truant);

  auto* tree = app.add_subcommand("tree", "escalator tree over N_0");
  with_m(tree);
  tree->add_option("--depth", cfg.depth)->required();
  with_bound(tree, 100'000);
  with_format(tree);

  auto* local = app.add_subcommand("local", "local representability");
  with_m(local);
  with_coeffs(local, true);
  local->add_option("--N", cfg.N)->required();
  local->add_option("--p", cfg.p, "single prime");
  with_format(local);

  auto* exc = app.add_subcommand("exceptions", "locally represented N without an N_0 representation");
  with_m(exc);
  with_coeffs(exc, true);
  with_bound(exc, 1'000'000);
  with_cache(exc);
  with_format(exc);

  auto* kw = app.add_subcommand("kwindow", "admissible k interval");
  with_m(kw);
  with_coeffs(kw, true);
  kw->add_option("--N", cfg.N)->required();
  kw->add_option("--C", cfg.C)->capture_default_str();
  with_format(kw);

  auto* fk = app.add_subcommand("feasible-k", "k in the window with a nonnegative system solution");
  with_m(fk);
  with_coeffs(fk, true);
  fk->add_option("--N", cfg.N)->required();
  fk->add_option("--C", cfg.C)->capture_default_str();
  fk->add_option("--k-max", cfg.k_max)->required();
  with_format(fk);

  auto* gamma = app.add_subcommand("gamma", "largest truant in the escalator tree");
  with_m(gamma);
  gamma->add_option("--depth", cfg.depth)->required();
  with_bound(gamma, 100'000);
  with_format(gamma);

  auto* growth = app.add_subcommand("growth", "largest exception across m");
  with_coeffs(growth, true);
  growth->add_option("--m-lo", cfg.m_lo)->capture_default_str();
  growth->add_option("--m-hi", cfg.m_hi)->capture_default_str();
  with_bound(growth, 1'000'000);
  growth->add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber)->capture_default_str();
  with_cache(growth);
  with_format(growth);

  auto* td5 = app.add_subcommand("td5", "escalation tuples of length five");
  td5->add_flag("--check-local", cfg.check_local, "test local universality of each tuple");
  with_format(td5);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!coeffs.empty()) cfg.coeffs = parse_coeffs(coeffs);
    cfg.domain = parse_domain(domain);
    cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
    if (!output.empty() && output != "-") cfg.output = output;
    if (!write_file.empty()) cfg.write_file = write_file;
    if (!read_file.empty()) cfg.read_file = read_file;
    if (const char* env = std::getenv("MGONAL_CACHE_DIR"); env && *env)
      cfg.cache_dir = env;
    else if (!cache_dir.empty())
      cfg.cache_dir = cache_dir;
    if (cfg.command == "set" && !cfg.read_file && cfg.coeffs.empty())
      throw UsageError("set needs --coeffs and --m, or --read");

    std::ostringstream buf;
    execute(cfg, buf);
    if (cfg.output) {
      std::ofstream f(*cfg.output, std::ios::binary);
      if (!f) throw ResourceError("cannot open " + cfg.output->string());
      f << buf.str();
      if (!f) throw ResourceError("write failed: " + cfg.output->string());
    } else {
      out << buf.str();
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << '\n';
    return 3;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::range_error& e) {
    err << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return 3;
  }
}

}  // namespace mgonal::cli
