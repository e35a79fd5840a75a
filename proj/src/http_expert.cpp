#include "ognav/http_expert.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <set>

namespace ognav {

using nlohmann::json;

std::string http_expert_request_json(const std::string& target,
                                     const std::vector<Frontier>& frontiers,
                                     const std::vector<FrontierContext>& contexts,
                                     double explored_fraction) {
  json doc;
  doc["target"] = target;
  json arr = json::array();
  for (std::size_t i = 0; i < frontiers.size(); ++i) {
    const Frontier& f = frontiers[i];
    json entry;
    entry["id"] = f.id;
    entry["centroid"] = {f.centroid.x(), f.centroid.y()};
    json objects = json::array();
    std::string room = "unknown";
    double density = 0.0;
    if (i < contexts.size()) {
      for (const auto& [label, count] : contexts[i].nearby_objects)
        objects.push_back(json::array({label, count}));
      room = contexts[i].room_label;
      density = contexts[i].local_density;
    }
    entry["nearby_objects"] = objects;
    entry["room"] = room;
    entry["density"] = density;
    arr.push_back(entry);
  }
  doc["frontiers"] = arr;
  doc["map_summary"] = {{"explored_fraction", explored_fraction}};
  return doc.dump();
}

namespace {

void log_event(std::vector<std::string>* events, const std::string& msg) {
  if (events) events->push_back(msg);
}

}  // namespace

ExpertRecommendation http_expert_recommend(
    const std::string& endpoint_url, const std::string& target,
    const std::vector<Frontier>& frontiers,
    const std::vector<FrontierContext>& contexts, double explored_fraction,
    int timeout_ms, std::vector<std::string>* events) {
  ExpertRecommendation rec{"http", {}};

  // Split "http://host:port/path" into client base and request path.
  std::string base = endpoint_url, path = "/";
  const auto scheme = endpoint_url.find("://");
  if (scheme != std::string::npos) {
    const auto slash = endpoint_url.find('/', scheme + 3);
    if (slash != std::string::npos) {
      base = endpoint_url.substr(0, slash);
      path = endpoint_url.substr(slash);
    }
  }

  httplib::Client client(base);
  client.set_connection_timeout(0, timeout_ms * 1000);
  client.set_read_timeout(0, timeout_ms * 1000);
  client.set_write_timeout(0, timeout_ms * 1000);

  const std::string body =
      http_expert_request_json(target, frontiers, contexts, explored_fraction);
  httplib::Result res = client.Post(path, body, "application/json");
  if (!res) {
    log_event(events, "http expert " + endpoint_url + ": " +
                          httplib::to_string(res.error()));
    return rec;
  }
  if (res->status != 200) {
    log_event(events, "http expert " + endpoint_url + ": status " +
                          std::to_string(res->status));
    return rec;
  }

  json doc;
  try {
    doc = json::parse(res->body);
  } catch (const json::parse_error& e) {
    log_event(events, "http expert " + endpoint_url + ": bad JSON: " + e.what());
    return rec;
  }
  if (!doc.is_object() || !doc.contains("frontier_ids") ||
      !doc["frontier_ids"].is_array()) {
    log_event(events, "http expert " + endpoint_url +
                          ": response missing frontier_ids array");
    return rec;
  }

  std::set<int> valid;
  for (const Frontier& f : frontiers) valid.insert(f.id);
  for (const auto& v : doc["frontier_ids"]) {
    if (!v.is_number_integer()) {
      log_event(events, "http expert " + endpoint_url + ": non-integer id dropped");
      continue;
    }
    const int id = v.get<int>();
    if (valid.count(id)) {
      rec.frontier_ids.insert(id);
    } else {
      log_event(events, "http expert " + endpoint_url + ": id " +
                            std::to_string(id) + " not in candidate set, dropped");
    }
  }
  return rec;
}

}  // namespace ognav
