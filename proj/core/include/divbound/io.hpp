#pragma once

#include <string>
#include <vector>

#include "divbound/bounds.hpp"
#include "divbound/exponent.hpp"
#include "divbound/measure.hpp"
#include "divbound/oracle.hpp"
#include "divbound/partial_sums.hpp"

namespace divbound {

/// Output unit for log-based quantities; internal values always stay in nats
/// and the conversion happens at serialization only.
enum class Base { nats, bits };

/// Pair input file: {"alphabet": ["a","b"], "P": [...], "Q": [...]} with
/// index-aligned arrays; optional "renormalize": true.
MeasurePair parse_pair_json(const std::string& text);
MeasurePair load_pair_file(const std::string& path);

/// Distribution input: {"alphabet": [...], "Q": [...]} (a pair file also
/// works; its Q side is taken).
DiscreteDistribution parse_distribution_json(const std::string& text);
DiscreteDistribution load_distribution_file(const std::string& path);

struct BernoulliPairSpec {
  BernoulliVector p;
  BernoulliVector q;
};

/// Bernoulli vectors file: {"p": [...], "q": [...]}.
BernoulliPairSpec parse_bernoulli_json(const std::string& text);
BernoulliPairSpec load_bernoulli_file(const std::string& path);

std::string pair_to_json(const MeasurePair& pair);
std::string report_to_json(const BoundReport& report, Base base = Base::nats);
std::string witnesses_to_json(const std::vector<Witness>& witnesses);
std::string bracket_to_json(const ExponentBracket& bracket, Base base = Base::nats);
std::string d_star_to_json(const DStarResult& result, Base base = Base::nats);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// 1 for nats, 1/ln 2 for bits.
double base_scale(Base base);

}  // namespace divbound
