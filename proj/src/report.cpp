#include "ilpdp/report.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "ilpdp/discrepancy.hpp"

namespace ilpdp {

using nlohmann::json;

RunReport make_report(std::string command, const Solution& sol, const SolveStats& stats) {
  RunReport r;
  r.command = std::move(command);
  r.status = sol.status;
  r.value = sol.value;
  r.witness = sol.x;
  r.H = to_string(stats.H.value);
  r.H_provenance = std::string(to_string(stats.H.provenance));
  r.H_warning = stats.H.warning;
  r.strategy = std::string(to_string(stats.strategy));
  r.feasibility_fallback = stats.feasibility_fallback;
  r.K = stats.K;
  r.radii = stats.radii;
  r.l1_cap = stats.l1_cap.str();
  r.peak_bytes = stats.peak_bytes;
  r.normalize_seconds = stats.normalize_seconds;
  r.plan_seconds = stats.plan_seconds;
  r.merge_seconds = stats.merge_seconds;
  r.unbounded_seconds = stats.unbounded_seconds;
  r.reconstruct_seconds = stats.reconstruct_seconds;
  r.total_seconds = stats.total_seconds;
  for (const auto& L : stats.levels)
    r.levels.push_back({L.index, L.cells, L.finite, std::string(to_string(L.kernel)), L.copied, L.seconds});
  return r;
}

Status parse_status(std::string_view text) {
  for (Status s : {Status::Optimal, Status::Feasible, Status::Infeasible, Status::Unbounded})
    if (to_string(s) == text) return s;
  throw std::invalid_argument("unknown status '" + std::string(text) + "'");
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["status"] = std::string(to_string(r.status));
  j["value"] = r.value ? json(to_string(*r.value)) : json(nullptr);
  if (r.witness) {
    json w = json::array();
    for (auto v : *r.witness) w.push_back(to_string(v));
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["H"] = {{"value", r.H}, {"provenance", r.H_provenance}};
  j["H"]["warning"] = r.H_warning ? json(*r.H_warning) : json(nullptr);
  j["strategy"] = r.strategy;
  j["proximity"] = r.proximity;
  j["feasibility_fallback"] = r.feasibility_fallback;
  j["K"] = r.K;
  j["radii"] = r.radii;
  j["l1_cap"] = r.l1_cap;
  j["peak_bytes"] = r.peak_bytes;
  j["timings"] = {{"normalize", r.normalize_seconds}, {"plan", r.plan_seconds},
                  {"merge", r.merge_seconds},         {"unbounded", r.unbounded_seconds},
                  {"reconstruct", r.reconstruct_seconds}, {"total", r.total_seconds}};
  json levels = json::array();
  for (const auto& L : r.levels)
    levels.push_back({{"index", L.index},
                      {"cells", L.cells},
                      {"finite", L.finite},
                      {"kernel", L.kernel},
                      {"copied", L.copied},
                      {"seconds", L.seconds}});
  j["levels"] = levels;
  return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    if (!j.at("value").is_null()) r.value = parse_wide(j.at("value").get<std::string>());
    if (!j.at("witness").is_null()) {
      r.witness.emplace();
      for (const auto& v : j.at("witness")) r.witness->push_back(parse_wide(v.get<std::string>()));
    }
    r.H = j.at("H").at("value").get<std::string>();
    r.H_provenance = j.at("H").at("provenance").get<std::string>();
    if (!j.at("H").at("warning").is_null()) r.H_warning = j.at("H").at("warning").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.proximity = j.at("proximity").get<bool>();
    r.feasibility_fallback = j.at("feasibility_fallback").get<bool>();
    r.K = j.at("K").get<std::int64_t>();
    r.radii = j.at("radii").get<std::vector<std::int64_t>>();
    r.l1_cap = j.at("l1_cap").get<std::string>();
    r.peak_bytes = j.at("peak_bytes").get<std::uint64_t>();
    const auto& t = j.at("timings");
    r.normalize_seconds = t.at("normalize").get<double>();
    r.plan_seconds = t.at("plan").get<double>();
    r.merge_seconds = t.at("merge").get<double>();
    r.unbounded_seconds = t.at("unbounded").get<double>();
    r.reconstruct_seconds = t.at("reconstruct").get<double>();
    r.total_seconds = t.at("total").get<double>();
    for (const auto& L : j.at("levels"))
      r.levels.push_back({L.at("index").get<std::size_t>(), L.at("cells").get<std::uint64_t>(),
                          L.at("finite").get<std::uint64_t>(), L.at("kernel").get<std::string>(),
                          L.at("copied").get<bool>(), L.at("seconds").get<double>()});
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad report JSON: ") + e.what());
  }
}

std::string report_to_text(const RunReport& r) {
  std::ostringstream out;
  out << "status: " << to_string(r.status) << '\n';
  if (r.value) out << "value: " << to_string(*r.value) << '\n';
  if (r.witness) {
    out << "x:";
    for (auto v : *r.witness) out << ' ' << to_string(v);
    out << '\n';
  }
  out << "H: " << r.H << " (" << r.H_provenance << ")\n";
  if (r.H_warning) out << "warning: " << *r.H_warning << '\n';
  out << "strategy: " << r.strategy << (r.proximity ? ", proximity on" : "") << '\n';
  if (r.feasibility_fallback) out << "note: objective overflowed 128 bits, answered by the feasibility pass\n";
  out << "levels: " << r.K + 1 << ", l1 cap " << r.l1_cap << ", peak bytes " << r.peak_bytes << '\n';
  out << "time: normalize " << r.normalize_seconds << "s, plan " << r.plan_seconds << "s, merge " << r.merge_seconds
      << "s, unbounded check " << r.unbounded_seconds << "s, reconstruct " << r.reconstruct_seconds << "s, total "
      << r.total_seconds << "s\n";
  return out.str();
}

int exit_code(Status s) {
  switch (s) {
    case Status::Optimal:
    case Status::Feasible:
      return 0;
    case Status::Infeasible:
      return 1;
    case Status::Unbounded:
      return 2;
  }
  return 70;
}

}  // namespace ilpdp
