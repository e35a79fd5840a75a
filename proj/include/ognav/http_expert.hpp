#pragma once

#include "ognav/experts.hpp"
#include "ognav/frontier.hpp"

#include <string>
#include <vector>

namespace ognav {

/// Adapter for an external recommender (e.g. an LLM service). POSTs the
/// candidate frontiers with their contexts as JSON and expects
/// {"frontier_ids": [...]} back. Ids outside the candidate set are
/// dropped with a warning; timeouts, transport errors, non-200 statuses
/// and malformed bodies degrade to an empty recommendation, with the
/// failure appended to `events` when provided.
ExpertRecommendation http_expert_recommend(
    const std::string& endpoint_url, const std::string& target,
    const std::vector<Frontier>& frontiers,
    const std::vector<FrontierContext>& contexts, double explored_fraction,
    int timeout_ms, std::vector<std::string>* events = nullptr);

/// Request body builder, exposed for tests and for offline inspection.
std::string http_expert_request_json(const std::string& target,
                                     const std::vector<Frontier>& frontiers,
                                     const std::vector<FrontierContext>& contexts,
                                     double explored_fraction);

}  // namespace ognav
