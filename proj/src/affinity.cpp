#include "ognav/affinity.hpp"

#include "ognav/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace ognav {

using nlohmann::json;

namespace {

double checked_score(double v, const std::string& where) {
  if (!(v >= 0.0 && v <= 1.0))
    throw ConfigError(where + ": affinity score must be in [0, 1]");
  return v;
}

}  // namespace

void AffinityTable::set_object_affinity(const std::string& object,
                                        const std::string& target, double score) {
  object_[target][object] = checked_score(score, "object_affinity");
}

void AffinityTable::set_room_affinity(const std::string& room,
                                      const std::string& target, double score) {
  room_[target][room] = checked_score(score, "room_affinity");
}

double AffinityTable::object_score(const std::string& object,
                                   const std::string& target) const {
  auto t = object_.find(target);
  if (t == object_.end()) return default_score;
  auto o = t->second.find(object);
  return o == t->second.end() ? default_score : o->second;
}

double AffinityTable::room_score(const std::string& room,
                                 const std::string& target) const {
  auto t = room_.find(target);
  if (t == room_.end()) return default_score;
  auto r = t->second.find(room);
  return r == t->second.end() ? default_score : r->second;
}

AffinityTable AffinityTable::parse(const std::string& text,
                                   const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  AffinityTable table;
  if (doc.contains("default"))
    table.default_score = checked_score(doc["default"].get<double>(), origin);
  auto read = [&](const char* key,
                  std::map<std::string, std::map<std::string, double>>& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_object())
      throw ConfigError(origin + ": " + key + " must be an object");
    for (const auto& [target, entries] : doc[key].items())
      for (const auto& [label, score] : entries.items()) {
        const double s = score.template get<double>();
        out[target][label] = checked_score(s, origin + ": " + key + "." + target);
      }
  };
  read("object_affinity", table.object_);
  read("room_affinity", table.room_);
  return table;
}

AffinityTable AffinityTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open affinity table");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

}  // namespace ognav
