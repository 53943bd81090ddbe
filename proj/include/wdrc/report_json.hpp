#pragma once

// JSON shapes for classification reports and WDR certificates. Timing is
// deliberately left out so a cache replay reproduces reports byte for
// byte.

#include <json.hpp>

#include "wdrc/classify.hpp"
#include "wdrc/wdr.hpp"

namespace wdrc {

inline nlohmann::json to_json(const ClassificationReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["found"] = nlohmann::json::array();
  for (const auto& f : rep.found) {
    nlohmann::json e;
    e["set"] = f.set;
    e["canon"] = f.canon;
    e["family"] =
        f.family ? nlohmann::json(f.family->to_string()) : nlohmann::json();
    j["found"].push_back(std::move(e));
  }
  j["expected"] = nlohmann::json::array();
  for (const auto& e : rep.expected) {
    nlohmann::json x;
    x["set"] = e.set;
    x["canon"] = e.canon;
    x["family"] = e.family.to_string();
    j["expected"].push_back(std::move(x));
  }
  j["verdict"] = rep.verdict;
  j["stats"] = {{"raw_space", rep.stats.raw_space},
                {"examined", rep.stats.examined},
                {"wdr", rep.stats.wdr},
                {"one_type", rep.stats.one_type},
                {"found", rep.stats.found}};
  return j;
}

inline nlohmann::json to_json(const Main3Report& rep) {
  nlohmann::json j;
  auto entries = [](const std::vector<Main3Report::Entry>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : list)
      arr.push_back({{"n", e.n},
                     {"set", e.set},
                     {"canon", e.canon},
                     {"family", e.family}});
    return arr;
  };
  j["primitive_found"] = entries(rep.primitive_found);
  j["primitive_expected"] = entries(rep.primitive_expected);
  j["exact"] = rep.exact;
  j["violations"] = rep.violations;
  return j;
}

inline nlohmann::json to_json(const WdrCertificate& cert,
                              const std::optional<FamilyTag>& family) {
  nlohmann::json j;
  j["circulant"] = format_circulant(cert.circulant);
  j["wdr"] = true;
  j["partition"] = format_partition(cert.partition);
  j["T"] = cert.types;
  j["one_type"] = cert.one_type;
  j["commutative"] = cert.scheme.commutative;
  j["primitive"] = is_primitive(cert.scheme);
  j["family"] =
      family ? nlohmann::json(family->to_string()) : nlohmann::json();
  return j;
}

inline nlohmann::json to_json(const SchemeFailure& failure) {
  nlohmann::json j;
  j["wdr"] = false;
  j["witness"] = failure.to_string();
  j["class_i"] = failure.class_i;
  j["class_j"] = failure.class_j;
  j["class_l"] = failure.class_l;
  j["z"] = failure.z;
  j["z_prime"] = failure.z_prime;
  j["count_z"] = failure.count_z;
  j["count_z_prime"] = failure.count_z_prime;
  return j;
}

}  // namespace wdrc
