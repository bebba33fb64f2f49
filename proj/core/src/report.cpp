// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#include "json.hpp"

#include "termi/driver.hpp"

namespace termi {

namespace {

using Json = nlohmann::ordered_json;

std::string answer_word(Answer a) { return a == Answer::Yes ? "YES" : "NO"; }

std::string joined(const std::vector<PredKey>& ps) {
    std::string out;
    for (const auto& p : ps) {
        out += (out.empty() ? "" : ", ") + p.str();
    }
    return out;
}

Json to_json(const Verdict& v) {
    Json j;
    j["answer"] = answer_word(v.answer);
    j["method"] = v.method;
    j["loops"] = Json::array();
    for (const auto& l : v.loops) {
        Json lj;
        lj["predicates"] = Json::array();
        for (const auto& p : l.predicates) {
            lj["predicates"].push_back(p.str());
        }
        lj["numerical"] = l.numerical;
        lj["integer_based"] = l.integer_based;
        lj["domain"] = Json::object();
        for (const auto& [p, d] : l.domain) {
            Json elems = Json::array();
            for (const auto& e : d.elements) {
                elems.push_back(e.to_string());
            }
            lj["domain"][p.str()] = std::move(elems);
        }
        lj["pairs"] = Json::array();
        for (const auto& ev : l.pairs) {
            Json pj;
            pj["query"] = ev.pair.query.str();
            pj["constraint"] = ev.pair.domain_constraint.to_string();
            pj["proof"] = ev.proved() ? Json(ev.proof()) : Json(nullptr);
            lj["pairs"].push_back(std::move(pj));
        }
        j["loops"].push_back(std::move(lj));
    }
    j["diagnostics"] = v.diagnostics;
    return j;
}

std::string to_text(const Verdict& v) {
    std::string out = v.answer == Answer::Yes ? "YES: termination proved" : "NO: no termination proof found";
    out += " (" + v.method + ")\n";
    for (const auto& l : v.loops) {
        out += "loop " + joined(l.predicates) + (l.numerical ? ", numerical" : "") +
               (l.integer_based ? ", integer-based" : ", not integer-based") + "\n";
        for (const auto& [p, d] : l.domain) {
            out += "  domain " + p.str() + ":";
            for (const auto& e : d.elements) {
                out += " " + e.to_string();
            }
            out += "\n";
        }
        for (const auto& ev : l.pairs) {
            out += "  pair " + ev.pair.query.str() + " " + ev.pair.domain_constraint.to_string() + ": " +
                   ev.proof() + "\n";
        }
    }
    if (v.answer == Answer::No) {
        for (const auto& ev : v.evidence) {
            if (!ev.proved()) {
                out += "first unproven circular pair:\n" + render_pair(ev.pair);
                break;
            }
        }
    }
    for (const auto& r : v.rungs) {
        out += "rung " + r.name + ": " + (r.proved ? "proved" : "failed") + (r.note.empty() ? "" : " (" + r.note + ")") +
               "\n";
    }
    for (const auto& d : v.diagnostics) {
        out += "note: " + d + "\n";
    }
    return out;
}

} // namespace

std::string render_report(const Verdict& v, ReportFormat format) {
    return format == ReportFormat::Json ? to_json(v).dump(2) + "\n" : to_text(v);
}

} // namespace termi
