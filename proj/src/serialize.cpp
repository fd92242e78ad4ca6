// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The beamselect authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "beamselect/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>

namespace beamselect {

using nlohmann::ordered_json;

namespace {

ordered_json score_json(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double score_from(const ordered_json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        return s == "-inf" ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }
    return j.get<double>();
}

ordered_json config_json(const RunConfig& cfg)
{
    ordered_json j = ordered_json::object();
    for (const auto& k : config_keys())
        j[k.section][k.name] = k.get(cfg);
    return j;
}

ordered_json row_json(const SweepRow& r)
{
    return {{"algorithm", r.algorithm},   {"x_name", r.x_name},
            {"x_value", r.x_value},       {"mean_sum_rate", r.mean_sum_rate},
            {"std_err", r.std_err},       {"mean_gap", r.mean_gap},
            {"mean_runtime_s", r.mean_runtime_s}, {"trials", r.trials},
            {"seed", r.seed}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

template <typename F>
auto parse_guard(F&& f)
{
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("json: ") + e.what());
    }
}

} // namespace

std::string to_json(const SelectionDocument& doc, const RunConfig& cfg)
{
    ordered_json trace = ordered_json::array();
    for (const auto& e : doc.result.trace) {
        ordered_json cands = ordered_json::array();
        for (const auto& c : e.candidates)
            cands.push_back({{"user", c.user},
                             {"beam", c.beam},
                             {"offset", c.offset},
                             {"score", score_json(c.score)},
                             {"skipped", c.skipped}});
        trace.push_back({{"stage", e.stage},
                         {"chosen_user", e.chosen_user},
                         {"chosen_beam", e.chosen_beam},
                         {"metric", score_json(e.metric)},
                         {"candidates", std::move(cands)}});
    }
    ordered_json j;
    j["algorithm"] = doc.algorithm;
    j["trial"] = doc.trial;
    j["snr_db"] = doc.snr_db;
    j["sum_rate"] = doc.sum_rate;
    j["users"] = doc.result.users;
    j["beams"] = doc.result.beams;
    j["trace"] = std::move(trace);
    j["config"] = config_json(cfg);
    return dump(j);
}

SelectionDocument selection_from_json(const std::string& text)
{
    return parse_guard([&] {
        const auto j = ordered_json::parse(text);
        SelectionDocument d;
        d.algorithm = j.at("algorithm").get<std::string>();
        d.trial = j.at("trial").get<std::uint64_t>();
        d.snr_db = j.at("snr_db").get<double>();
        d.sum_rate = j.at("sum_rate").get<double>();
        d.result.users = j.at("users").get<IndexList>();
        d.result.beams = j.at("beams").get<IndexList>();
        for (const auto& e : j.at("trace")) {
            TraceEntry t;
            t.stage = e.at("stage").get<std::string>();
            t.chosen_user = e.at("chosen_user").get<Index>();
            t.chosen_beam = e.at("chosen_beam").get<Index>();
            t.metric = score_from(e.at("metric"));
            for (const auto& c : e.at("candidates"))
                t.candidates.push_back({c.at("user").get<Index>(), c.at("beam").get<Index>(),
                                        c.at("offset").get<int>(), score_from(c.at("score")),
                                        c.at("skipped").get<bool>()});
            d.result.trace.push_back(std::move(t));
        }
        return d;
    });
}

std::string to_json(const OracleReport& rep, const RunConfig& cfg)
{
    ordered_json details = ordered_json::array();
    for (const auto& d : rep.details)
        details.push_back({{"trial", d.trial},
                           {"passed", d.passed},
                           {"excluded", d.excluded},
                           {"violation", d.violation},
                           {"note", d.note}});
    ordered_json metrics = ordered_json::object();
    for (const auto& [k, v] : rep.metrics)
        metrics[k] = v;
    ordered_json j;
    j["claim_id"] = rep.claim_id;
    j["instances"] = rep.instances;
    j["passes"] = rep.passes;
    j["excluded"] = rep.excluded;
    j["pass_fraction"] = rep.pass_fraction;
    j["worst_violation"] = rep.worst_violation;
    j["metrics"] = std::move(metrics);
    j["details"] = std::move(details);
    j["config"] = config_json(cfg);
    return dump(j);
}

std::string rows_to_json(const std::vector<SweepRow>& rows, const RunConfig& cfg)
{
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back(row_json(r));
    ordered_json j;
    j["config"] = config_json(cfg);
    j["rows"] = std::move(arr);
    return dump(j);
}

std::vector<SweepRow> rows_from_json(const std::string& text)
{
    return parse_guard([&] {
        const auto j = ordered_json::parse(text);
        std::vector<SweepRow> rows;
        for (const auto& r : j.at("rows")) {
            SweepRow s;
            s.algorithm = r.at("algorithm").get<std::string>();
            s.x_name = r.at("x_name").get<std::string>();
            s.x_value = r.at("x_value").get<double>();
            s.mean_sum_rate = r.at("mean_sum_rate").get<double>();
            s.std_err = r.at("std_err").get<double>();
            s.mean_gap = r.at("mean_gap").get<double>();
            s.mean_runtime_s = r.at("mean_runtime_s").get<double>();
            s.trials = r.at("trials").get<std::size_t>();
            s.seed = r.at("seed").get<std::uint64_t>();
            rows.push_back(std::move(s));
        }
        return rows;
    });
}

} // namespace beamselect
