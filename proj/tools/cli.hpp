#ifndef ZECK_TOOLS_CLI_HPP
#define ZECK_TOOLS_CLI_HPP

// Command-line front end. run() maps one subcommand onto one library call and renders
// the result as JSON, CSV or plain text.

#include "zeck/zeck.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace zeck::cli {

using Json = nlohmann::ordered_json;

struct Result {
  int status = 0;
  std::string out;  ///< rendered document (empty when written to --out)
  std::string err;  ///< diagnostics
};

enum class Format { Json, Csv, Text };

// Shortest round-trip decimal; exponent without padding ("1e-4").
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (auto e = s.find('e'); e != std::string::npos) {
    std::size_t digits = e + 1;
    if (digits < s.size() && (s[digits] == '-' || s[digits] == '+')) {
      if (s[digits] == '+') s.erase(digits, 1);
      else ++digits;
    }
    while (digits + 1 < s.size() && s[digits] == '0') s.erase(digits, 1);
  }
  return s;
}

/// Tabular output: a fixed header and string cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
        if (!quote) {
          out += cells[i];
          continue;
        }
        out += '"';
        for (char c : cells[i]) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

struct Rendered {
  Json json;
  Table table;
  std::string text;
};

namespace detail {

inline Json big(const BigInt& v) { return v.str(); }

inline Json big_list(const std::vector<BigInt>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

inline Json exact(const Rational& q) { return Json{{"exact", fraction_string(q)}, {"float", to_double(q)}}; }

inline void add_exact(std::vector<std::string>& row, const Rational& q) {
  row.push_back(fraction_string(q));
  row.push_back(format_double(to_double(q)));
}

inline std::string join(const std::vector<BigInt>& values, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].str();
  }
  return out;
}

inline BigInt parse_big(const std::string& text, const std::string& flag) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw CLI::ValidationError(flag, "expected a non-negative decimal integer, got '" + text + "'");
  return BigInt(text);
}

inline Json picks_json(const Decomposition& d, const Sequence& seq) {
  Json out = Json::array();
  for (auto it = d.picks.rbegin(); it != d.picks.rend(); ++it) {
    Json positions = Json::array();
    Json terms = Json::array();
    for (auto p = it->second.rbegin(); p != it->second.rend(); ++p) {
      positions.push_back(*p + 1);
      terms.push_back(seq.bin(it->first)[*p].str());
    }
    out.push_back(Json{{"bin", it->first}, {"positions", positions}, {"terms", terms}});
  }
  return out;
}

inline void picks_rows(Table& t, const Decomposition& d, const Sequence& seq, const std::string& prefix_cell) {
  for (auto it = d.picks.rbegin(); it != d.picks.rend(); ++it)
    for (auto p = it->second.rbegin(); p != it->second.rend(); ++p) {
      std::vector<std::string> row;
      if (!prefix_cell.empty()) row.push_back(prefix_cell);
      row.push_back(std::to_string(it->first));
      row.push_back(std::to_string(*p + 1));
      row.push_back(seq.bin(it->first)[*p].str());
      t.rows.push_back(std::move(row));
    }
}

inline Json decomposition_json(const Decomposition& d, const Sequence& seq) {
  return Json{{"summands", big_list(d.summands(seq))}, {"count", d.count_summands()}, {"picks", picks_json(d, seq)}};
}

inline Json bins_json(const std::vector<Bin>& bins) {
  Json out = Json::array();
  for (const auto& b : bins) out.push_back(big_list(b));
  return out;
}

inline Table bins_table(const std::vector<Bin>& bins) {
  Table t{{"bin", "position", "term"}, {}};
  for (std::size_t n = 0; n < bins.size(); ++n)
    for (std::size_t j = 0; j < bins[n].size(); ++j)
      t.rows.push_back({std::to_string(n + 1), std::to_string(j + 1), bins[n][j].str()});
  return t;
}

inline std::string bins_text(const std::vector<Bin>& bins) {
  std::string out;
  for (std::size_t n = 0; n < bins.size(); ++n) out += "bin " + std::to_string(n + 1) + ": " + join(bins[n]) + "\n";
  return out;
}

inline Rendered pmf_rendered(const SummandPMF& pmf, const Json& head) {
  Rendered r;
  r.json = head;
  r.json["source"] = pmf.source == PmfSource::Model ? "model" : "empirical";
  r.json["n"] = pmf.bin;
  r.json["includeTopBin"] = pmf.include_top_bin;
  r.json["total"] = pmf.total.str();
  Json rows = Json::array();
  r.table.header = {"summands", "weight", "probability", "probability_float"};
  r.text = "summands  weight  probability\n";
  for (std::size_t i = 0; i < pmf.weights.size(); ++i) {
    const Rational p = pmf.prob(i);
    rows.push_back(Json{{"summands", i}, {"weight", pmf.weights[i].str()}, {"probability", exact(p)}});
    std::vector<std::string> row{std::to_string(i), pmf.weights[i].str()};
    add_exact(row, p);
    r.table.rows.push_back(row);
    r.text += std::to_string(i) + "  " + pmf.weights[i].str() + "  " + fraction_string(p) + "\n";
  }
  r.json["distribution"] = rows;
  r.json["mean"] = exact(pmf.mean());
  r.json["variance"] = exact(pmf.variance());
  r.text += "mean " + fraction_string(pmf.mean()) + ", variance " + fraction_string(pmf.variance()) + "\n";
  return r;
}

inline const char* opt_str(const std::optional<AllowedForm>& f) { return f ? to_string(*f) : nullptr; }

}  // namespace detail

/// Parameters gathered from the command line.
struct Params {
  std::string schedule;
  BinIndex bins = 0;
  std::string x;
  std::string bound;
  std::size_t limit = kDefaultEnumerationLimit;
  std::uint32_t delta = 2;
  BinIndex max_n = 0;
  BinIndex n = 0;
  bool include_top_bin = false;
  std::uint64_t b = 0;
  std::uint64_t g = 0;
  std::size_t levels = 0;
  std::string method = "bruteforce";
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
  std::size_t state_cap = kDefaultStateCap;
};

namespace detail {

inline Sequence built(const Params& p) {
  return build_sequence(parse_schedule(p.schedule), p.bins, p.state_cap);
}

inline Rendered cmd_construct(const Params& p) {
  const Sequence seq = built(p);
  Rendered r;
  r.json = Json{{"schedule", render(seq.schedule())}, {"numBins", seq.num_bins()}, {"bins", bins_json(seq.bins())}};
  r.table = bins_table(seq.bins());
  r.text = bins_text(seq.bins());
  return r;
}

inline Rendered cmd_decompose(const Params& p) {
  const Sequence seq = built(p);
  const BigInt x = parse_big(p.x, "--x");
  const auto d = decompose(seq, x);
  Rendered r;
  r.json = Json{{"schedule", render(seq.schedule())}, {"x", big(x)}, {"found", d.has_value()}};
  r.table.header = {"bin", "position", "term"};
  if (d) {
    r.json["decomposition"] = decomposition_json(*d, seq);
    picks_rows(r.table, *d, seq, "");
    r.text = x.str() + " = " + join(d->summands(seq), " + ") + "\n";
  } else {
    r.json["decomposition"] = nullptr;
    r.text = x.str() + " has no legal decomposition over " + std::to_string(seq.num_bins()) + " bins\n";
  }
  return r;
}

inline Rendered cmd_enumerate(const Params& p) {
  const Sequence seq = built(p);
  const BigInt x = parse_big(p.x, "--x");
  const DecompositionSet set = enumerate_decompositions(seq, x, p.limit);
  Rendered r;
  Json list = Json::array();
  r.table.header = {"index", "bin", "position", "term"};
  for (std::size_t i = 0; i < set.found.size(); ++i) {
    list.push_back(decomposition_json(set.found[i], seq));
    picks_rows(r.table, set.found[i], seq, std::to_string(i + 1));
    r.text += x.str() + " = " + join(set.found[i].summands(seq), " + ") + "\n";
  }
  if (set.truncated) r.text += "(more than " + std::to_string(p.limit) + " decompositions)\n";
  r.json = Json{{"schedule", render(seq.schedule())}, {"x", big(x)}, {"count", set.found.size()},
                {"truncated", set.truncated}, {"decompositions", list}};
  return r;
}

inline Json classification_json(const Classification& c) {
  Json bins = Json::array();
  for (const auto& reason : c.per_bin) {
    Json j{{"bin", reason.bin}};
    j["form"] = reason.form ? Json(to_string(*reason.form)) : Json(nullptr);
    j["violation"] = reason.violation ? Json(to_string(*reason.violation)) : Json(nullptr);
    j["k"] = reason.k ? Json(*reason.k) : Json(nullptr);
    j["subcase"] = reason.subcase ? Json(to_string(*reason.subcase)) : Json(nullptr);
    bins.push_back(j);
  }
  return Json{{"verdict", to_string(c.verdict)}, {"perBin", bins}};
}

inline Rendered cmd_classify(const Params& p) {
  const BinSchedule schedule = parse_schedule(p.schedule);
  const Classification c = classify(schedule, p.bins);
  Rendered r;
  r.json = Json{{"schedule", render(schedule)}, {"numBins", p.bins}};
  r.json.update(classification_json(c));
  r.table.header = {"bin", "form", "violation", "k", "subcase"};
  r.text = "verdict: " + std::string(to_string(c.verdict)) + "\n";
  for (const auto& reason : c.per_bin) {
    r.table.rows.push_back({std::to_string(reason.bin), reason.form ? to_string(*reason.form) : "",
                            reason.violation ? to_string(*reason.violation) : "",
                            reason.k ? std::to_string(*reason.k) : "",
                            reason.subcase ? to_string(*reason.subcase) : ""});
    r.text += "bin " + std::to_string(reason.bin) + ": " +
              (reason.form ? to_string(*reason.form) : to_string(*reason.violation)) + "\n";
  }
  return r;
}

inline Rendered cmd_verify_unique(const Params& p) {
  const Sequence seq = built(p);
  const BigInt bound = p.bound.empty() ? omega(seq, seq.num_bins()) : parse_big(p.bound, "--bound");
  const Classification c = classify(seq.schedule(), seq.num_bins());
  const ExhaustiveCheck check = verify_exhaustive(seq, bound, p.threads);
  Rendered r;
  r.json = Json{{"schedule", render(seq.schedule())}, {"numBins", seq.num_bins()}, {"bound", big(bound)},
                {"classification", classification_json(c)}, {"verdict", to_string(check.verdict)}};
  r.json["collision"] = check.collision
                            ? Json{{"x", big(check.collision->x)},
                                   {"first", decomposition_json(check.collision->first, seq)},
                                   {"second", decomposition_json(check.collision->second, seq)}}
                            : Json(nullptr);
  r.json["gap"] = check.gap ? big(*check.gap) : Json(nullptr);
  r.table.header = {"bound", "classifier", "verdict", "x", "first", "second"};
  std::vector<std::string> row{bound.str(), to_string(c.verdict), to_string(check.verdict), "", "", ""};
  r.text = "classifier: " + std::string(to_string(c.verdict)) + "\nexhaustive 1.." + bound.str() + ": " +
           to_string(check.verdict) + "\n";
  if (check.collision) {
    row[3] = check.collision->x.str();
    row[4] = join(check.collision->first.summands(seq), "+");
    row[5] = join(check.collision->second.summands(seq), "+");
    r.text += row[3] + " = " + row[4] + " = " + row[5] + "\n";
  } else if (check.gap) {
    row[3] = check.gap->str();
    r.text += row[3] + " has no legal decomposition\n";
  }
  r.table.rows.push_back(row);
  return r;
}

inline Rendered cmd_divisibility(const Params& p) {
  const Sequence seq = built(p);
  const DivisibilityResult d = divisibility_check(seq, p.n, p.state_cap);
  Rendered r;
  r.json = Json{{"schedule", render(seq.schedule())}, {"n0", p.n}, {"k", big(d.k)}, {"allDivisible", d.all_divisible}};
  r.json["firstOffender"] = d.first_offender ? big(*d.first_offender) : Json(nullptr);
  r.table = Table{{"n0", "k", "allDivisible", "firstOffender"},
                  {{std::to_string(p.n), d.k.str(), d.all_divisible ? "true" : "false",
                    d.first_offender ? d.first_offender->str() : ""}}};
  r.text = "k = " + d.k.str() + "; terms from bin " + std::to_string(p.n) +
           (d.all_divisible ? " are all multiples of " + BigInt(d.k + 1).str()
                            : " include " + d.first_offender->str() + ", not a multiple of " + BigInt(d.k + 1).str()) +
           "\n";
  return r;
}

inline Rendered cmd_moments(const Params& p) {
  const BinSchedule schedule = parse_schedule(p.schedule);
  Rendered r;
  Json rows = Json::array();
  r.table.header = {"bin", "size", "mu", "mu_float", "sigma2", "sigma2_float", "rho", "rho_float"};
  for (BinIndex n = 1; n <= p.max_n; ++n) {
    const MomentTriple m = bin_moments(schedule.bin_size(n), schedule.allowed(n), p.delta, n);
    rows.push_back(Json{{"bin", n}, {"size", schedule.bin_size(n)}, {"mu", exact(m.mu)}, {"sigma2", exact(m.sigma2)},
                        {"rho", exact(m.rho)}});
    std::vector<std::string> row{std::to_string(n), std::to_string(schedule.bin_size(n))};
    add_exact(row, m.mu);
    add_exact(row, m.sigma2);
    add_exact(row, m.rho);
    r.table.rows.push_back(row);
    r.text += "bin " + std::to_string(n) + ": mu " + fraction_string(m.mu) + ", sigma2 " + fraction_string(m.sigma2) +
              ", rho " + fraction_string(m.rho) + "\n";
  }
  r.json = Json{{"schedule", render(schedule)}, {"delta", p.delta}, {"rows", rows}};
  return r;
}

inline Rendered cmd_lyapunov(const Params& p) {
  const BinSchedule schedule = parse_schedule(p.schedule);
  const LyapunovSeries series = lyapunov_series(schedule, p.delta, p.max_n);
  Rendered r;
  Json rows = Json::array();
  r.table.header = {"n", "s2", "s2_float", "e", "e_float", "squaredRatio", "squaredRatio_float"};
  for (const auto& row : series.rows) {
    rows.push_back(Json{{"n", row.n}, {"s2", exact(row.s2)}, {"e", exact(row.e)},
                        {"squaredRatio", row.squared_ratio ? exact(*row.squared_ratio) : Json(nullptr)}});
    std::vector<std::string> cells{std::to_string(row.n)};
    add_exact(cells, row.s2);
    add_exact(cells, row.e);
    if (row.squared_ratio) add_exact(cells, *row.squared_ratio);
    else cells.insert(cells.end(), {"", ""});
    r.table.rows.push_back(cells);
    r.text += std::to_string(row.n) + "  " +
              (row.squared_ratio ? fraction_string(*row.squared_ratio) + "  " +
                                       format_double(to_double(*row.squared_ratio))
                                 : std::string("undefined")) +
              "\n";
  }
  r.json = Json{{"schedule", render(schedule)}, {"delta", p.delta}, {"rows", rows}};
  return r;
}

inline Rendered cmd_model_dist(const Params& p) {
  const BinSchedule schedule = parse_schedule(p.schedule);
  return pmf_rendered(model_summand_pmf(schedule, p.n, p.include_top_bin), Json{{"schedule", render(schedule)}});
}

inline Rendered cmd_empirical_dist(const Params& p) {
  const BinSchedule schedule = parse_schedule(p.schedule);
  const Sequence seq = build_sequence(schedule, p.n, p.state_cap);
  return pmf_rendered(empirical_summand_pmf(seq, p.n, p.state_cap), Json{{"schedule", render(schedule)}});
}

inline Rendered cmd_ks(const Params& p) {
  const BinSchedule schedule = parse_schedule(p.schedule);
  const GaussReport g = gaussian_distance(model_summand_pmf(schedule, p.n, p.include_top_bin));
  Rendered r;
  r.json = Json{{"schedule", render(schedule)}, {"n", p.n},          {"includeTopBin", p.include_top_bin},
                {"ksDistance", g.ks_distance},   {"mean", g.mean},  {"sd", g.sd},
                {"supportSize", g.grid_size}};
  r.table = Table{{"n", "ksDistance", "mean", "sd", "supportSize"},
                  {{std::to_string(p.n), format_double(g.ks_distance), format_double(g.mean), format_double(g.sd),
                    std::to_string(g.grid_size)}}};
  r.text = "KS distance " + format_double(g.ks_distance) + " (mean " + format_double(g.mean) + ", sd " +
           format_double(g.sd) + ")\n";
  return r;
}

inline Rendered cmd_thm35(const Params& p) {
  const Theorem35Report t = theorem35_check(p.max_n, p.delta);
  Rendered r;
  Json rows = Json::array();
  r.table.header = {"n", "rho", "rho_float", "ratio", "ratio_float"};
  for (std::size_t i = 0; i < t.rho.size(); ++i) {
    rows.push_back(Json{{"n", i + 1}, {"rho", exact(t.rho[i])}, {"ratio", exact(t.ratios[i])}});
    std::vector<std::string> row{std::to_string(i + 1)};
    add_exact(row, t.rho[i]);
    add_exact(row, t.ratios[i]);
    r.table.rows.push_back(row);
  }
  Json coefficients = Json::array();
  for (const auto& c : t.coefficients) coefficients.push_back(exact(c));
  r.json = Json{{"delta", t.delta},
                {"maxN", t.max_n},
                {"bounded", t.bounded},
                {"maxRatio", exact(t.max_ratio)},
                {"argmax", t.argmax},
                {"maxAtRightEdge", t.max_at_right_edge},
                {"ratioLimit", exact(t.ratio_limit)},
                {"sigmaMatches", t.sigma_matches},
                {"rhoMatchesGeneral", t.rho_matches_general},
                {"polynomialVerified", t.polynomial_verified},
                {"coefficients", coefficients},
                {"rows", rows}};
  r.text = std::string("bounded: ") + (t.bounded ? "yes" : "no") + "\nrho_2 = " + fraction_string(t.rho.size() > 1 ? t.rho[1] : t.rho[0]) +
           "\nmax ratio " + fraction_string(t.max_ratio) + " at n = " + std::to_string(t.argmax) + ", limit " +
           fraction_string(t.ratio_limit) + "\n";
  return r;
}

inline Sequence gnary_built(const Params& p) {
  if (p.method == "bruteforce") return build_gnary_bruteforce(p.b, p.g, p.bins);
  return build_gnary_gapformula(p.b, p.g, p.bins);
}

inline Rendered cmd_gnary(const Params& p) {
  const Sequence seq = gnary_built(p);
  Rendered r;
  r.json = Json{{"b", p.b}, {"g", p.g}, {"method", p.method}, {"numBins", seq.num_bins()}, {"bins", bins_json(seq.bins())}};
  r.table = bins_table(seq.bins());
  r.text = bins_text(seq.bins());
  return r;
}

inline Rendered cmd_gnary_report(const Params& p) {
  const Sequence seq = gnary_built(p);
  const GnaryReport g = gap_report(seq, p.state_cap);
  Rendered r;
  Json gaps = Json::array();
  r.table.header = {"bin", "position", "gap", "omegaBefore", "exceedsOmega", "tight"};
  for (const auto& e : g.gaps) {
    gaps.push_back(Json{{"bin", e.bin}, {"position", e.position}, {"gap", big(e.gap)},
                        {"exceedsOmega", e.exceeds_omega}, {"tight", e.tight}});
    r.table.rows.push_back({std::to_string(e.bin), std::to_string(e.position), e.gap.str(),
                            g.omegas[e.bin - 1].str(), e.exceeds_omega ? "true" : "false", e.tight ? "true" : "false"});
  }
  Json counts = Json::array();
  for (std::size_t i = 0; i < g.counts.size(); ++i) {
    const auto& c = g.counts[i];
    counts.push_back(Json{{"n", i + 1}, {"actual", big(c.actual)},
                          {"predicted", c.predicted ? big(*c.predicted) : Json(nullptr)},
                          {"generalFormula", big(c.general_formula)}});
    r.text += "|I_" + std::to_string(i + 1) + "| = " + c.actual.str() +
              (c.predicted ? " (predicted " + c.predicted->str() + ")" : std::string()) + "\n";
  }
  Json omegas = Json::array();
  for (const auto& o : g.omegas) omegas.push_back(o.str());
  auto bools = [](const std::vector<bool>& v) {
    Json out = Json::array();
    for (bool b : v) out.push_back(b);
    return out;
  };
  r.json = Json{{"b", p.b},
                {"g", p.g},
                {"method", p.method},
                {"bins", bins_json(seq.bins())},
                {"omegas", omegas},
                {"gaps", gaps},
                {"allGapsExceedOmega", g.all_gaps_exceed},
                {"omegaStrictlyIncreasing", g.omega_strictly_increasing},
                {"tightBins", bools(g.tight_bins)},
                {"literalRemark", bools(g.literal_remark)},
                {"representable", counts}};
  r.text = bins_text(seq.bins()) + "all gaps exceed Omega_{n-1}: " + (g.all_gaps_exceed ? "yes" : "no") + "\n" + r.text;
  return r;
}

inline Rendered cmd_tree(const Params& p) {
  const ZeckTree tree = build_tree(p.levels);
  Rendered r;
  r.json = Json{{"numLevels", tree.num_levels()}, {"levels", bins_json(tree.levels())}};
  r.table.header = {"level", "position", "term"};
  for (std::size_t i = 1; i <= tree.num_levels(); ++i) {
    for (std::size_t j = 1; j <= i; ++j) r.table.rows.push_back({std::to_string(i), std::to_string(j), tree.at(i, j).str()});
    r.text += std::string(2 * (tree.num_levels() - i), ' ') + join(tree.levels()[i - 1], "   ") + "\n";
  }
  return r;
}

inline Rendered cmd_tree_check(const Params& p) {
  const ZeckTree tree = build_tree(p.levels);
  Rendered r;
  const std::optional<bool> telephone = tree.num_levels() >= 3 ? std::optional<bool>(telephone_check(tree)) : std::nullopt;
  const bool equivalent = bin_equivalence_check(p.levels);
  const bool unique = tree_unique_decomposition(tree);
  Json readings = Json::array();
  r.table.header = {"reading", "checked", "i", "j", "expected", "actual"};
  r.text = "telephone diagonal: " + std::string(telephone ? (*telephone ? "yes" : "no") : "n/a") +
           "\nbin equivalence: " + (equivalent ? "yes" : "no") + "\nunique decomposition: " + (unique ? "yes" : "no") + "\n";
  if (tree.num_levels() >= 2) {
    for (const auto& res : recurrence_check(tree)) {
      Json mismatches = Json::array();
      for (const auto& m : res.mismatches) {
        mismatches.push_back(Json{{"i", m.i}, {"j", m.j}, {"expected", big(m.expected)}, {"actual", big(m.actual)}});
        r.table.rows.push_back({to_string(res.reading), std::to_string(res.checked), std::to_string(m.i),
                                std::to_string(m.j), m.expected.str(), m.actual.str()});
      }
      if (res.mismatches.empty()) r.table.rows.push_back({to_string(res.reading), std::to_string(res.checked), "", "", "", ""});
      readings.push_back(Json{{"reading", to_string(res.reading)}, {"checked", res.checked}, {"mismatches", mismatches}});
      r.text += "recurrence (" + std::string(to_string(res.reading)) + "): " + std::to_string(res.mismatches.size()) +
                " of " + std::to_string(res.checked) + " entries disagree\n";
    }
  }
  r.json = Json{{"numLevels", tree.num_levels()}};
  r.json["telephone"] = telephone ? Json(*telephone) : Json(nullptr);
  r.json["binEquivalence"] = equivalent;
  r.json["uniqueDecomposition"] = unique;
  r.json["recurrence"] = readings;
  return r;
}

inline std::string render_output(const Rendered& r, Format format) {
  switch (format) {
    case Format::Json: return r.json.dump(2) + "\n";
    case Format::Csv: return r.table.csv();
    case Format::Text: return r.text;
  }
  return {};
}

inline std::string error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse-error";
  if (dynamic_cast<const SemanticError*>(&e)) return "semantic-error";
  if (dynamic_cast<const CapExceeded*>(&e)) return "cap-exceeded";
  if (dynamic_cast<const SearchExhausted*>(&e)) return "search-exhausted";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition-error";
  return "error";
}

}  // namespace detail

/// Parses `args` (without the program name), runs the subcommand and renders its result.
inline Result run(const std::vector<std::string>& args) {
  CLI::App app{"Generalized Zeckendorf bin sequences", "zeck"};
  app.require_subcommand(1);
  Params p;
  Format format = Format::Json;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};

  using Runner = std::function<Rendered(const Params&)>;
  Runner runner;
  auto command = [&](const std::string& name, const std::string& about, Runner fn) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--format", format, "json, csv or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", p.out, "write output to this file");
    sub->callback([&runner, fn] { runner = fn; });
    return sub;
  };
  auto schedule = [&](CLI::App* s) { s->add_option("--schedule", p.schedule, "SIZESPEC/ALLOWSPEC/adj:UINT")->required(); };
  auto bins = [&](CLI::App* s) { s->add_option("--bins", p.bins, "number of bins")->required()->check(CLI::PositiveNumber); };
  auto cap = [&](CLI::App* s) { s->add_option("--state-cap", p.state_cap, "achievable-sum state cap")->check(CLI::PositiveNumber); };
  auto n_top = [&](CLI::App* s, bool top_flag) {
    s->add_option("--n", p.n, "bin N")->required()->check(CLI::PositiveNumber);
    if (top_flag) s->add_flag("--include-top-bin", p.include_top_bin, "condition on using bin N");
  };
  auto gnary = [&](CLI::App* s) {
    s->add_option("--b", p.b, "bin size")->required()->check(CLI::PositiveNumber);
    s->add_option("--g", p.g, "summands per used bin")->required()->check(CLI::PositiveNumber);
    s->add_option("--bins", p.bins, "number of bins")->required()->check(CLI::PositiveNumber);
    s->add_option("--method", p.method, "bruteforce or gap-formula")->check(CLI::IsMember({"bruteforce", "gap-formula"}));
    cap(s);
  };

  CLI::App* s = command("construct", "build the first bins of a sequence", detail::cmd_construct);
  schedule(s), bins(s), cap(s);
  s = command("decompose", "canonical legal decomposition of x", detail::cmd_decompose);
  schedule(s), bins(s), cap(s);
  s->add_option("--x", p.x, "target")->required();
  s = command("enumerate", "all legal decompositions of x", detail::cmd_enumerate);
  schedule(s), bins(s), cap(s);
  s->add_option("--x", p.x, "target")->required();
  s->add_option("--limit", p.limit, "maximum number returned")->check(CLI::PositiveNumber);
  s = command("classify", "uniqueness classifier, bin by bin", detail::cmd_classify);
  schedule(s), bins(s);
  s = command("verify-unique", "exhaustive uniqueness check over 1..bound", detail::cmd_verify_unique);
  schedule(s), bins(s), cap(s);
  s->add_option("--bound", p.bound, "largest x checked (default Omega_N)");
  s->add_option("--threads", p.threads, "worker threads")->check(CLI::PositiveNumber);
  s = command("divisibility", "divisibility of the terms from bin n on", detail::cmd_divisibility);
  schedule(s), bins(s), cap(s);
  s->add_option("--n", p.n, "first bin checked")->required()->check(CLI::PositiveNumber);
  s = command("moments", "per-bin mean, variance and absolute central moment", detail::cmd_moments);
  schedule(s);
  s->add_option("--delta", p.delta, "moment order 2+delta")->check(CLI::PositiveNumber);
  s->add_option("--max-n", p.max_n, "last bin")->required()->check(CLI::PositiveNumber);
  s = command("lyapunov", "squared Lyapunov ratio for N = 1..max-n", detail::cmd_lyapunov);
  schedule(s);
  s->add_option("--delta", p.delta, "moment order 2+delta")->check(CLI::PositiveNumber);
  s->add_option("--max-n", p.max_n, "last N")->required()->check(CLI::PositiveNumber);
  s = command("model-dist", "model distribution of the number of summands", detail::cmd_model_dist);
  schedule(s), n_top(s, true);
  s = command("empirical-dist", "summand counts of integers whose largest summand is in bin N", detail::cmd_empirical_dist);
  schedule(s), n_top(s, false), cap(s);
  s = command("ks", "KS distance of the standardized model distribution to N(0,1)", detail::cmd_ks);
  schedule(s), n_top(s, true);
  s = command("thm35", "boundedness of rho_n / n^delta for b_n = n, full allowed sets", detail::cmd_thm35);
  s->add_option("--delta", p.delta, "even, >= 2")->check(CLI::PositiveNumber);
  s->add_option("--max-n", p.max_n, "last n")->required()->check(CLI::PositiveNumber);
  s = command("gnary", "build a g-nary sequence", detail::cmd_gnary);
  gnary(s);
  s = command("gnary-report", "gaps, Omega and representable counts of a g-nary sequence", detail::cmd_gnary_report);
  gnary(s);
  s = command("tree", "build the Zeckendorf tree", detail::cmd_tree);
  s->add_option("--levels", p.levels, "number of levels")->required()->check(CLI::PositiveNumber);
  s = command("tree-check", "telephone diagonal, bin equivalence, uniqueness and recurrence readings",
              detail::cmd_tree_check);
  s->add_option("--levels", p.levels, "number of levels")->required()->check(CLI::PositiveNumber);

  Result result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.status = 2;
    result.err = std::string("usage error: ") + e.what() + "\n";
    return result;
  }

  std::string rendered;
  try {
    rendered = detail::render_output(runner(p), format);
  } catch (const CLI::ValidationError& e) {
    result.status = 2;
    result.err = std::string("usage error: ") + e.what() + "\n";
    return result;
  } catch (const Error& e) {
    result.status = 1;
    result.err = std::string(e.what()) + "\n";
    if (format == Format::Json) {
      Json err{{"error", {{"kind", detail::error_kind(e)}, {"message", e.what()}}}};
      if (auto* pe = dynamic_cast<const ParseError*>(&e)) err["error"]["position"] = pe->position();
      result.out = err.dump(2) + "\n";
    }
    return result;
  }

  if (p.out.empty()) {
    result.out = std::move(rendered);
  } else {
    std::ofstream file(p.out, std::ios::binary);
    file << rendered;
    if (!file) {
      result.status = 1;
      result.err = "cannot write " + p.out + "\n";
    }
  }
  return result;
}

}  // namespace zeck::cli

#endif  // ZECK_TOOLS_CLI_HPP
