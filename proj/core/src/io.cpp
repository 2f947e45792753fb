#include "divbound/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace divbound {

using nlohmann::json;

namespace {

// JSON has no infinity literal; extended reals serialize as strings.
json number(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

json number(double value, Base base, bool nats) {
  return number(nats ? value * base_scale(base) : value);
}

std::vector<double> doubles(const json& node, const std::string& key) {
  if (!node.contains(key) || !node[key].is_array())
    raise(Errc::bad_input, "expected array field '" + key + "'");
  return node[key].get<std::vector<double>>();
}

json distribution_json(const DiscreteDistribution& dist) {
  return json{{"alphabet", dist.labels()}, {"probs", dist.probs()}};
}

}  // namespace

double base_scale(Base base) { return base == Base::bits ? 1.0 / std::log(2.0) : 1.0; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::bad_input, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) raise(Errc::bad_input, "cannot write '" + path + "'");
  out << text;
}

namespace {

json parse(const std::string& text) {
  json node = json::parse(text, nullptr, false);
  if (node.is_discarded()) raise(Errc::bad_input, "malformed JSON input");
  return node;
}

std::vector<std::string> alphabet_of(const json& node, std::size_t fallback_size) {
  if (node.contains("alphabet")) {
    if (!node["alphabet"].is_array()) raise(Errc::bad_input, "'alphabet' must be an array");
    return node["alphabet"].get<std::vector<std::string>>();
  }
  std::vector<std::string> labels(fallback_size);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "a" + std::to_string(i);
  return labels;
}

}  // namespace

MeasurePair parse_pair_json(const std::string& text) {
  const json node = parse(text);
  const auto p = doubles(node, "P");
  const auto q = doubles(node, "Q");
  const bool renormalize = node.value("renormalize", false);
  const auto labels = alphabet_of(node, p.size());
  return make_pair(build_distribution(labels, p, renormalize),
                   build_distribution(labels, q, renormalize));
}

MeasurePair load_pair_file(const std::string& path) {
  return parse_pair_json(read_text_file(path));
}

DiscreteDistribution parse_distribution_json(const std::string& text) {
  const json node = parse(text);
  const std::string key = node.contains("Q") ? "Q" : (node.contains("probs") ? "probs" : "P");
  const auto q = doubles(node, key);
  const bool renormalize = node.value("renormalize", false);
  return build_distribution(alphabet_of(node, q.size()), q, renormalize);
}

DiscreteDistribution load_distribution_file(const std::string& path) {
  return parse_distribution_json(read_text_file(path));
}

BernoulliPairSpec parse_bernoulli_json(const std::string& text) {
  const json node = parse(text);
  return {make_bernoulli_vector(doubles(node, "p")),
          make_bernoulli_vector(doubles(node, "q"))};
}

BernoulliPairSpec load_bernoulli_file(const std::string& path) {
  return parse_bernoulli_json(read_text_file(path));
}

std::string pair_to_json(const MeasurePair& pair) {
  const json node{{"alphabet", pair.p.labels()}, {"P", pair.p.probs()}, {"Q", pair.q.probs()}};
  return node.dump();
}

std::string report_to_json(const BoundReport& report, Base base) {
  json exact{{"kl_pq", number(report.kl_pq, base, true)},
             {"kl_qp", number(report.kl_qp, base, true)},
             {"tv", number(report.tv)},
             {"chi2", number(report.chi2)},
             {"l2", number(report.l2)},
             {"renyi",
              json{{"0.5", number(report.renyi_half, base, true)},
                   {"2", number(report.renyi_two, base, true)},
                   {"inf", number(report.renyi_inf, base, true)}}}};

  json bounds = json::array();
  for (const auto& b : report.bounds) {
    json entry{{"name", b.name},
               {"direction", b.direction == Direction::upper ? "upper" : "lower"},
               {"target",
                [&b] {
                  switch (b.target) {
                    case Target::kl_pq: return "kl_pq";
                    case Target::kl_qp: return "kl_qp";
                    case Target::tv: return "tv";
                    case Target::chi2: return "chi2";
                    case Target::d2: return "d2";
                    case Target::renyi: return "renyi";
                  }
                  return "unknown";
                }()},
               {"value", number(b.value, base, b.nats())},
               {"applicable", b.applicable}};
    if (b.order) entry["order"] = number(*b.order);
    if (!b.applicable) entry["reason"] = b.reason;
    bounds.push_back(std::move(entry));
  }

  json orderings;
  for (const auto& [name, holds] : report.orderings) orderings[name] = holds;

  json node{{"pair",
             json{{"alphabet", report.p.labels()},
                  {"P", report.p.probs()},
                  {"Q", report.q.probs()}}},
            {"stats",
             json{{"beta1", number(report.beta1)},
                  {"beta2", number(report.beta2)},
                  {"q_min", number(report.q_min)},
                  {"q_max", number(report.q_max)},
                  {"p_min", number(report.p_min)},
                  {"pi_q", number(report.pi_q)},
                  {"pi_q_approximate", report.pi_q_approximate}}},
            {"exact", std::move(exact)},
            {"bounds", std::move(bounds)},
            {"orderings", std::move(orderings)},
            {"base", base == Base::bits ? "bits" : "nats"}};
  return node.dump(2);
}

std::string witnesses_to_json(const std::vector<Witness>& witnesses) {
  json list = json::array();
  for (const auto& w : witnesses) {
    json entry{{"inequality", w.inequality},
               {"pair",
                json{{"alphabet", w.pair.p.labels()},
                     {"P", w.pair.p.probs()},
                     {"Q", w.pair.q.probs()}}},
               {"lhs", number(w.lhs)},
               {"rhs", number(w.rhs)},
               {"slack", number(w.slack)},
               {"seed", w.seed},
               {"trial", w.trial}};
    if (!w.detail.empty()) entry["detail"] = w.detail;
    list.push_back(std::move(entry));
  }
  return list.dump(2);
}

std::string bracket_to_json(const ExponentBracket& bracket, Base base) {
  const json node{{"delta", number(bracket.delta)},
                  {"q_min", number(bracket.q_min)},
                  {"pi_q", number(bracket.pi_q)},
                  {"pi_q_approximate", bracket.pi_q_approximate},
                  {"e_lower", number(bracket.e_lower, base, true)},
                  {"e_lower_loose", number(bracket.e_lower_loose, base, true)},
                  {"e_upper_nominal", number(bracket.e_upper_nominal, base, true)},
                  {"e_upper_adjusted", number(bracket.e_upper_adjusted, base, true)},
                  {"exact", number(bracket.exact, base, true)},
                  {"ratio_nominal", number(bracket.ratio_nominal)},
                  {"nominal_upper_holds", bracket.nominal_upper_holds},
                  {"base", base == Base::bits ? "bits" : "nats"}};
  return node.dump(2);
}

std::string d_star_to_json(const DStarResult& result, Base base) {
  const json node{{"value", number(result.value, base, true)},
                  {"argmin", distribution_json(result.argmin)},
                  {"eps", number(result.eps)},
                  {"m", result.m},
                  {"note", result.note},
                  {"base", base == Base::bits ? "bits" : "nats"}};
  return node.dump(2);
}

}  // namespace divbound
