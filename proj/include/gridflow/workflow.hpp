#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridflow/types.hpp"

namespace gridflow {

// Declared data file: logical name plus its statically declared size.
struct FileRef {
    FileName name;
    Bytes size = 0;

    bool operator==(const FileRef&) const = default;
};

// The three matching-rule families: functionality, performance, reliability.
struct RequirementSet {
    std::set<std::string> required_capabilities;
    std::optional<double> max_expected_duration_s;
    std::optional<double> min_uptime_h;

    bool operator==(const RequirementSet&) const = default;
};

struct AbstractActivity {
    ActivityId id;
    std::string port_type;
    std::vector<FileRef> inputs;
    std::vector<FileRef> outputs;
    WorkUnits work = 0;
    RequirementSet requirements;
};

struct AbstractWorkflow {
    std::string name;
    std::vector<AbstractActivity> activities;
    std::vector<std::pair<ActivityId, ActivityId>> dependencies; // producer -> consumer
    std::set<FileName> outputs; // final products, exempt from cleanup

    const AbstractActivity* find_activity(const ActivityId& id) const;
    std::vector<ActivityId> predecessors(const ActivityId& id) const;
    std::vector<ActivityId> successors(const ActivityId& id) const;
};

enum class DefectCode {
    DuplicateActivityId,
    UnknownActivity,
    CycleDetected,
    OutputNotProduced,
    NonPositiveWork,
    EmptyFileName,
    InputOutputOverlap,
    NegativeRequirement,
    NonPositiveSize,
    SizeMismatch,
    DataFlowWithoutDependency,
};

const char* defect_code_name(DefectCode code);

struct Defect {
    DefectCode code;
    std::string locus;   // activity id, edge, file name or cycle members
    std::string message;
};

struct ValidationReport {
    std::vector<Defect> defects;

    bool ok() const { return defects.empty(); }
};

ValidationReport validate(const AbstractWorkflow& w);

// Kahn's algorithm with a lexicographic tie-break so replays are stable.
// Throws CyclicWorkflow when the dependency relation has a cycle.
std::vector<ActivityId> topological_order(const AbstractWorkflow& w);

// ---------------------------------------------------------------------------
// Activity lifecycle

enum class ActivityState {
    Inactive,
    Ready,
    Executing,
    Finished,
    Faulted,
    Compensating,
    Aborted,
};

enum class LifecycleEvent {
    DepsMet,
    Dispatch,
    Complete,
    Fault,
    RecoveryRetry,
    Rebind,
    Escalate,
    Cancel,
    RollbackBegin,
    RollbackDone,
};

const char* activity_state_name(ActivityState s);
const char* lifecycle_event_name(LifecycleEvent e);

constexpr int kActivityStateCount = 7;
constexpr int kLifecycleEventCount = 10;

// Successor state if (s, e) is a defined edge, nullopt otherwise.
std::optional<ActivityState> transition_or_null(ActivityState s, LifecycleEvent e);

// Throwing variant; InvalidTransition for undefined pairs.
ActivityState transition(ActivityState s, LifecycleEvent e);

// ---------------------------------------------------------------------------
// Concrete workflow

struct Binding {
    ActivityId activity;
    ServiceId service;
    ResourceId resource;
    VirtualTime bound_at = 0;
    int attempt = 1; // 1-based, increments per re-bind
};

// Bindings start pending and are filled in lazily during execution.
struct ConcreteWorkflow {
    AbstractWorkflow source;
    std::map<ActivityId, std::optional<Binding>> bindings;
    std::map<ActivityId, std::vector<ServiceId>> candidate_lists;
};

} // namespace gridflow
