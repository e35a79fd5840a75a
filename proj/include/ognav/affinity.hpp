#pragma once

#include <map>
#include <string>

namespace ognav {

/// Commonsense co-occurrence scores: how strongly an observed object or
/// room label suggests a target label is nearby. Scores live in [0, 1];
/// missing pairs fall back to default_score. Values are configuration,
/// loaded from JSON, not ground truth.
class AffinityTable {
 public:
  double default_score = 0.1;

  void set_object_affinity(const std::string& object, const std::string& target,
                           double score);
  void set_room_affinity(const std::string& room, const std::string& target,
                         double score);

  double object_score(const std::string& object, const std::string& target) const;
  double room_score(const std::string& room, const std::string& target) const;

  /// Parse {"default": s, "object_affinity": {target: {object: s}},
  ///        "room_affinity": {target: {room: s}}}. Throws ConfigError.
  static AffinityTable parse(const std::string& text, const std::string& origin);
  static AffinityTable load(const std::string& path);

 private:
  // keyed target-major: table[target][context_label]
  std::map<std::string, std::map<std::string, double>> object_;
  std::map<std::string, std::map<std::string, double>> room_;
};

}  // namespace ognav
