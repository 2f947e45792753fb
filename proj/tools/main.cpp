// divbound: compute divergences, evaluate reverse-Pinsker bound reports,
// verify the inequality catalog, sweep the attainment constructions, and
// bracket non-typicality exponents. All I/O is via files and stdout; every
// randomized path honors --seed.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "divbound/bounds.hpp"
#include "divbound/divergence.hpp"
#include "divbound/exponent.hpp"
#include "divbound/io.hpp"
#include "divbound/oracle.hpp"
#include "divbound/partial_sums.hpp"

using namespace divbound;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EtaRange {
  double start = 0.0, stop = 0.0, step = 0.0;
};

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> alphas;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token == "inf" || token == "Inf" || token == "INF") {
      alphas.push_back(kInf);
    } else {
      alphas.push_back(std::stod(token));
    }
  }
  if (alphas.empty()) raise(Errc::bad_input, "empty --alpha list");
  return alphas;
}

EtaRange parse_eta_range(const std::string& text) {
  EtaRange range;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &range.start, &range.stop, &range.step) != 3 ||
      range.step <= 0.0 || range.start <= 0.0 || range.stop < range.start)
    raise(Errc::bad_input, "--eta expects START:STOP:STEP with 0 < START <= STOP, STEP > 0");
  return range;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
  } else {
    write_text_file(output_path, text);
  }
}

json number_or_inf(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

std::string alpha_key(double alpha) {
  if (std::isinf(alpha)) return "inf";
  std::ostringstream out;
  out << alpha;
  return out.str();
}

int run_compute(const std::string& input, const std::vector<double>& alphas, Base base,
                const std::string& output) {
  const auto pair = load_pair_file(input);
  const double scale = base_scale(base);
  json renyi_values;
  for (double alpha : alphas) renyi_values[alpha_key(alpha)] = number_or_inf(renyi(pair, alpha) * scale);
  const auto z = bhattacharyya(pair);
  const json doc{{"kl_pq", number_or_inf(kl(pair) * scale)},
                 {"kl_qp", number_or_inf(kl(make_pair(pair.q, pair.p)) * scale)},
                 {"tv", total_variation(pair)},
                 {"chi2", number_or_inf(pair.q_min > 0.0 ? chi_square(pair) : kInf)},
                 {"l2", euclidean_l2(pair)},
                 {"bhattacharyya", z.coefficient},
                 {"renyi", renyi_values},
                 {"base", base == Base::bits ? "bits" : "nats"}};
  emit(doc.dump(2), output);
  return 0;
}

int run_bounds(const std::string& input, Base base, const std::string& output) {
  const auto report = bound_report(load_pair_file(input));
  emit(report_to_json(report, base), output);
  return 0;
}

int run_verify(const std::string& suite, std::size_t trials, std::uint64_t seed,
               const std::string& output) {
  const std::vector<std::size_t> sizes{2, 3, 8, 64};
  std::vector<Witness> violations;
  std::vector<Witness> diagnostics;
  std::size_t pairs = 0;

  if (suite == "all") {
    auto summary = run_verification_sweep(seed, trials, sizes);
    pairs = summary.pairs;
    violations = std::move(summary.violations);
    diagnostics = std::move(summary.diagnostics);
  } else {
    if (find_inequality(suite) == nullptr)
      raise(Errc::unknown_inequality, "no registered inequality '" + suite + "'");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const std::size_t share = trials / sizes.size() + (i < trials % sizes.size() ? 1 : 0);
      PairSampler sampler(seed + i, sizes[i], 1e-4 / static_cast<double>(sizes[i]));
      if (auto witness = counterexample_search(suite, std::move(sampler), share))
        violations.push_back(std::move(*witness));
      pairs += share;
    }
  }

  std::cout << "pairs checked: " << pairs << "\n";
  std::cout << "violations: " << violations.size() << "\n";
  for (const auto& witness : diagnostics)
    std::cout << "diagnostic " << witness.inequality << ": lhs " << witness.lhs << " > rhs "
              << witness.rhs << " (" << witness.detail << ")\n";
  if (!violations.empty()) {
    const std::string path = output.empty() ? "witnesses.json" : output;
    write_text_file(path, witnesses_to_json(violations));
    std::cout << "witness file: " << path << "\n";
    return 1;
  }
  return 0;
}

int run_sweep(const std::string& construction, const EtaRange& range, const std::string& output) {
  std::ostringstream csv;
  csv << "eta1,eta2,tv,lower_bound,attained\n";
  csv.precision(17);
  auto row = [&csv](double eta1, double eta2, double tv, double lower) {
    const bool attained = std::abs(tv - lower) <= 1e-12 * std::max(1.0, tv);
    csv << eta1 << ',' << eta2 << ',' << tv << ',' << lower << ','
        << (attained ? "true" : "false") << '\n';
  };

  const int steps = static_cast<int>(std::floor((range.stop - range.start) / range.step + 1e-9));
  if (construction == "thm2") {
    for (int i = 0; i <= steps; ++i) {
      const double eta = range.start + i * range.step;
      const auto pair = attainment_construction(eta, eta);
      row(eta, eta, total_variation(pair), tv_lower_relinfo(pair).value);
    }
  } else if (construction == "thm2_general") {
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        const double eta1 = range.start + i * range.step;
        const double eta2 = range.start + j * range.step;
        const auto pair = attainment_construction(eta1, eta2);
        row(eta1, eta2, total_variation(pair), tv_lower_two_param(pair).value);
      }
    }
  } else {
    raise(Errc::bad_input, "--construction must be thm2 or thm2_general");
  }
  emit(csv.str(), output);
  return 0;
}

int run_exponent(const std::string& q_path, double delta, Base base, const std::string& format,
                 std::size_t trials, std::uint64_t seed, const std::string& output) {
  const auto q = load_distribution_file(q_path);
  if (format == "csv") {
    // Monte-Carlo table over a fixed ladder of sequence lengths.
    std::ostringstream csv;
    csv << "N,p_hat,neg_log_rate\n";
    csv.precision(17);
    for (std::size_t length : {125, 250, 500, 1000, 2000}) {
      const auto mc = montecarlo_nontypical(q, delta, length, trials, seed);
      csv << length << ',' << mc.p_hat << ',';
      if (mc.rate_defined) {
        csv << mc.neg_log_rate * base_scale(base);
      } else {
        csv << "undefined";
      }
      csv << '\n';
    }
    emit(csv.str(), output);
    return 0;
  }
  emit(bracket_to_json(exponent_bracket(q, delta), base), output);
  return 0;
}

int run_dstar(const std::string& q_path, double eps, unsigned grid, Base base,
              const std::string& output) {
  const auto result = d_star(load_distribution_file(q_path), eps, grid);
  emit(d_star_to_json(result, base), output);
  return 0;
}

int run_chain(const std::string& input, const std::vector<double>& alphas, Base base,
              const std::string& output) {
  const auto spec = load_bernoulli_file(input);
  const double scale = base_scale(base);
  json checks = json::array();
  for (double alpha : alphas) {
    const auto chain = renyi_chain_check(spec.p, spec.q, alpha);
    checks.push_back(json{{"alpha", number_or_inf(alpha)},
                          {"lhs", number_or_inf(chain.lhs * scale)},
                          {"additivity_sum", number_or_inf(chain.additivity_sum * scale)},
                          {"bound_sum", number_or_inf(chain.bound_sum * scale)},
                          {"holds", chain.holds}});
  }
  const auto caps = summability_caps(spec.p, spec.q);
  const json doc{{"checks", std::move(checks)},
                 {"caps", json{{"k1", caps.k1 * scale}, {"k2", caps.k2 * scale}, {"eps", caps.eps}}},
                 {"base", base == Base::bits ? "bits" : "nats"}};
  emit(doc.dump(2), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divergence bounds toolkit"};
  app.require_subcommand(1);

  std::string input, q_path, output;
  std::string alpha_text = "0.5,1,2,inf";
  std::string base_text = "nats";
  std::string format = "json";
  std::string suite = "all";
  std::string construction = "thm2";
  std::string eta_text;
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  double delta = 0.1;
  double eps = 0.1;
  unsigned grid = 2000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--base", base_text, "output unit for log-based values")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--output", output, "write the result to this path instead of stdout");
  };

  auto* compute = app.add_subcommand("compute", "divergences of a pair file");
  compute->add_option("--input", input, "pair JSON file")->required();
  compute->add_option("--alpha", alpha_text, "comma-separated Renyi orders, accepts inf");
  add_common(compute);

  auto* bounds = app.add_subcommand("bounds", "full bound report for a pair file");
  bounds->add_option("--input", input, "pair JSON file")->required();
  add_common(bounds);

  auto* verify = app.add_subcommand("verify", "run the inequality verification sweep");
  verify->add_option("--suite", suite, "all, or one inequality id");
  verify->add_option("--trials", trials, "number of sampled pairs");
  verify->add_option("--seed", seed, "sampler seed");
  verify->add_option("--output", output, "witness file path on violation");

  auto* sweep = app.add_subcommand("sweep", "attainment construction sweep as CSV");
  sweep->add_option("--construction", construction, "thm2 or thm2_general");
  sweep->add_option("--eta", eta_text, "START:STOP:STEP grid of eta values")->required();
  sweep->add_option("--output", output, "write the CSV to this path");

  auto* exponent = app.add_subcommand("exponent", "non-typicality exponent bracket");
  exponent->add_option("--q", q_path, "distribution JSON file")->required();
  exponent->add_option("--delta", delta, "relative typicality deviation")->required();
  exponent->add_option("--format", format, "json bracket or csv Monte-Carlo table")
      ->check(CLI::IsMember({"json", "csv"}));
  exponent->add_option("--trials", trials, "Monte-Carlo trials per table row");
  exponent->add_option("--seed", seed, "Monte-Carlo seed");
  add_common(exponent);

  auto* dstar = app.add_subcommand("dstar", "brute-force constrained divergence minimum");
  dstar->add_option("--q", q_path, "distribution JSON file")->required();
  dstar->add_option("--eps", eps, "total variation threshold")->required();
  dstar->add_option("--grid", grid, "type-class denominator m");
  add_common(dstar);

  auto* chain = app.add_subcommand("chain", "partial-sum Renyi chain checks");
  chain->add_option("--input", input, "Bernoulli vectors JSON file {\"p\": [...], \"q\": [...]}")
      ->required();
  chain->add_option("--alpha", alpha_text, "comma-separated Renyi orders, accepts inf");
  add_common(chain);

  CLI11_PARSE(app, argc, argv);

  const Base base = base_text == "bits" ? Base::bits : Base::nats;
  try {
    if (compute->parsed()) return run_compute(input, parse_alpha_list(alpha_text), base, output);
    if (bounds->parsed()) return run_bounds(input, base, output);
    if (verify->parsed()) return run_verify(suite, trials, seed, output);
    if (sweep->parsed()) return run_sweep(construction, parse_eta_range(eta_text), output);
    if (exponent->parsed())
      return run_exponent(q_path, delta, base, format, trials, seed, output);
    if (dstar->parsed()) return run_dstar(q_path, eps, grid, base, output);
    if (chain->parsed()) return run_chain(input, parse_alpha_list(alpha_text), base, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
