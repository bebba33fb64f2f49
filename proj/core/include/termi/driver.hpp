// Copyright (c) termi-arith contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "termi/abstract_interp.hpp"
#include "termi/ast.hpp"
#include "termi/dependency_graph.hpp"
#include "termi/domain.hpp"
#include "termi/modes.hpp"
#include "termi/query_mapping.hpp"

namespace termi {

enum class Answer : std::uint8_t { Yes, No };
enum class AnswerMode : std::uint8_t { On, Off, Auto };
enum class ReportFormat : std::uint8_t { Text, Json };

struct AnalysisOptions {
    std::size_t max_unfold = 1;
    AnswerMode answer_abstraction = AnswerMode::Auto;
    bool use_inference = true;
    std::size_t candidate_cap = 16;
    std::size_t pair_cap = 20000;
    std::size_t comparison_cap = 12;
    bool trace = false;
    ReportFormat format = ReportFormat::Text;
    // Zero means no limit.
    double timeout_seconds = 0;
};

enum class ProofKind : std::uint8_t { None, Structural, Function };

struct PairEvidence {
    QueryMappingPair pair;
    ProofKind kind = ProofKind::None;
    // 1-based position of the structural decrease.
    std::size_t position = 0;
    std::optional<TerminationFunction> function;

    [[nodiscard]] bool proved() const { return kind != ProofKind::None; }
    [[nodiscard]] std::string proof() const;
};

// One attempt of the escalation ladder.
struct Rung {
    std::string name;
    bool answers = false;
    bool proved = false;
    std::string note;
};

struct LoopReport {
    std::vector<PredKey> predicates;
    bool numerical = false;
    bool integer_based = false;
    // Partition of each loop predicate in the deciding run; empty when none ran.
    std::map<PredKey, PredDomain> domain;
    std::vector<PairEvidence> pairs;
};

struct Verdict {
    Answer answer = Answer::No;
    // "structural", "numeric", "vacuous" or "none".
    std::string method = "none";
    bool resource_limited = false;
    std::vector<LoopReport> loops;
    std::vector<std::string> diagnostics;
    std::vector<Rung> rungs;
    std::vector<std::string> trace;

    // State of the deciding (or last) numeric run.
    ComparisonSet comparisons;
    Domain domain;
    Domain extended;
    bool propagated = false;
    std::map<PredKey, PredDomain> answer_domains;
    std::optional<AnswerTable> answers;
    Program analysed;
    std::vector<PairEvidence> evidence;
};

class Deadline {
  public:
    explicit Deadline(double seconds);
    [[nodiscard]] bool expired() const;

  private:
    std::optional<std::chrono::steady_clock::time_point> end_;
};

// Evidence for one circular pair: the structural test first, then candidates.
PairEvidence prove_pair(const QueryMappingPair& p, std::size_t candidate_cap, const SolverLimits& limits = {});

// The program must be normalized.
Verdict analyse_termination(const Program& program, const QueryPattern& query, const AnalysisOptions& options = {});

std::string render_report(const Verdict& v, ReportFormat format);

// 0 for YES, 1 for NO, 3 when a resource limit decided the NO.
int exit_code(const Verdict& v);

} // namespace termi
