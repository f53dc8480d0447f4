#include "gridflow/workflow.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace gridflow {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::CyclicWorkflow: return "CyclicWorkflow";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::DuplicateService: return "DuplicateService";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::UnknownService: return "UnknownService";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::NoViableBinding: return "NoViableBinding";
    case ErrorCode::UnknownDefinition: return "UnknownDefinition";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::TimeTravel: return "TimeTravel";
    case ErrorCode::EventBudgetExceeded: return "EventBudgetExceeded";
    case ErrorCode::UnknownResource: return "UnknownResource";
    case ErrorCode::NoAliveCandidate: return "NoAliveCandidate";
    case ErrorCode::CapacityExhausted: return "CapacityExhausted";
    case ErrorCode::UnknownFile: return "UnknownFile";
    case ErrorCode::ForeignSnapshot: return "ForeignSnapshot";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InvalidWidth: return "InvalidWidth";
    case ErrorCode::InvalidLength: return "InvalidLength";
    }
    return "UnknownError";
}

const char* defect_code_name(DefectCode code) {
    switch (code) {
    case DefectCode::DuplicateActivityId: return "DuplicateActivityId";
    case DefectCode::UnknownActivity: return "UnknownActivity";
    case DefectCode::CycleDetected: return "CycleDetected";
    case DefectCode::OutputNotProduced: return "OutputNotProduced";
    case DefectCode::NonPositiveWork: return "NonPositiveWork";
    case DefectCode::EmptyFileName: return "EmptyFileName";
    case DefectCode::InputOutputOverlap: return "InputOutputOverlap";
    case DefectCode::NegativeRequirement: return "NegativeRequirement";
    case DefectCode::NonPositiveSize: return "NonPositiveSize";
    case DefectCode::SizeMismatch: return "SizeMismatch";
    case DefectCode::DataFlowWithoutDependency: return "DataFlowWithoutDependency";
    }
    return "UnknownDefect";
}

const AbstractActivity* AbstractWorkflow::find_activity(const ActivityId& id) const {
    for (const auto& a : activities)
        if (a.id == id) return &a;
    return nullptr;
}

std::vector<ActivityId> AbstractWorkflow::predecessors(const ActivityId& id) const {
    std::vector<ActivityId> out;
    for (const auto& [from, to] : dependencies)
        if (to == id) out.push_back(from);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ActivityId> AbstractWorkflow::successors(const ActivityId& id) const {
    std::vector<ActivityId> out;
    for (const auto& [from, to] : dependencies)
        if (from == id) out.push_back(to);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Kahn peel; whatever survives is part of (or downstream inside) a cycle.
std::set<ActivityId> cycle_members(const AbstractWorkflow& w) {
    std::map<ActivityId, int> indegree;
    std::map<ActivityId, std::vector<ActivityId>> succ;
    for (const auto& a : w.activities) indegree[a.id] = 0;
    for (const auto& [from, to] : w.dependencies) {
        if (!indegree.count(from) || !indegree.count(to)) continue;
        succ[from].push_back(to);
        indegree[to]++;
    }
    std::queue<ActivityId> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push(id);
    std::size_t peeled = 0;
    while (!ready.empty()) {
        ActivityId id = ready.front();
        ready.pop();
        peeled++;
        for (const auto& s : succ[id])
            if (--indegree[s] == 0) ready.push(s);
    }
    std::set<ActivityId> remaining;
    if (peeled < indegree.size()) {
        for (const auto& [id, deg] : indegree)
            if (deg > 0) remaining.insert(id);
    }
    return remaining;
}

bool path_exists(const std::map<ActivityId, std::vector<ActivityId>>& succ,
                 const ActivityId& from, const ActivityId& to) {
    std::set<ActivityId> seen;
    std::vector<ActivityId> stack{from};
    while (!stack.empty()) {
        ActivityId cur = stack.back();
        stack.pop_back();
        if (cur == to) return true;
        if (!seen.insert(cur).second) continue;
        auto it = succ.find(cur);
        if (it == succ.end()) continue;
        for (const auto& nxt : it->second) stack.push_back(nxt);
    }
    return false;
}

std::string join(const std::set<ActivityId>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ",";
        out += id;
    }
    return out;
}

} // namespace

ValidationReport validate(const AbstractWorkflow& w) {
    ValidationReport report;
    auto defect = [&](DefectCode code, const std::string& locus, const std::string& msg) {
        report.defects.push_back({code, locus, msg});
    };

    std::set<ActivityId> ids;
    for (const auto& a : w.activities) {
        if (!ids.insert(a.id).second)
            defect(DefectCode::DuplicateActivityId, a.id, "activity id declared twice");
        if (a.work <= 0)
            defect(DefectCode::NonPositiveWork, a.id, "work must be > 0");
        std::set<FileName> in_names;
        for (const auto& f : a.inputs) {
            if (f.name.empty())
                defect(DefectCode::EmptyFileName, a.id, "input file with empty name");
            else
                in_names.insert(f.name);
            if (f.size <= 0)
                defect(DefectCode::NonPositiveSize, a.id + "/" + f.name, "file size must be > 0");
        }
        for (const auto& f : a.outputs) {
            if (f.name.empty())
                defect(DefectCode::EmptyFileName, a.id, "output file with empty name");
            else if (in_names.count(f.name))
                defect(DefectCode::InputOutputOverlap, a.id + "/" + f.name,
                       "file appears in both inputs and outputs");
            if (f.size <= 0)
                defect(DefectCode::NonPositiveSize, a.id + "/" + f.name, "file size must be > 0");
        }
        if (a.requirements.max_expected_duration_s && *a.requirements.max_expected_duration_s < 0)
            defect(DefectCode::NegativeRequirement, a.id, "max_expected_duration_s < 0");
        if (a.requirements.min_uptime_h && *a.requirements.min_uptime_h < 0)
            defect(DefectCode::NegativeRequirement, a.id, "min_uptime_h < 0");
    }

    for (const auto& [from, to] : w.dependencies) {
        if (!ids.count(from))
            defect(DefectCode::UnknownActivity, from, "edge endpoint not declared");
        if (!ids.count(to))
            defect(DefectCode::UnknownActivity, to, "edge endpoint not declared");
    }

    std::set<ActivityId> cyc = cycle_members(w);
    if (!cyc.empty())
        defect(DefectCode::CycleDetected, join(cyc), "dependency graph has a directed cycle");

    // Declared sizes must agree across all mentions of a logical file.
    std::map<FileName, Bytes> sizes;
    std::map<FileName, ActivityId> producer_of;
    for (const auto& a : w.activities) {
        for (const auto& f : a.inputs) {
            auto [it, fresh] = sizes.emplace(f.name, f.size);
            if (!fresh && it->second != f.size)
                defect(DefectCode::SizeMismatch, f.name, "conflicting declared sizes");
        }
        for (const auto& f : a.outputs) {
            auto [it, fresh] = sizes.emplace(f.name, f.size);
            if (!fresh && it->second != f.size)
                defect(DefectCode::SizeMismatch, f.name, "conflicting declared sizes");
            if (!f.name.empty()) producer_of.emplace(f.name, a.id);
        }
    }

    for (const auto& name : w.outputs) {
        if (!producer_of.count(name))
            defect(DefectCode::OutputNotProduced, name, "declared output produced by no activity");
    }

    // A consumer of a produced file must be ordered after the producer,
    // otherwise it could dispatch before the file exists.
    if (cyc.empty()) {
        std::map<ActivityId, std::vector<ActivityId>> succ;
        for (const auto& [from, to] : w.dependencies) succ[from].push_back(to);
        for (const auto& a : w.activities) {
            for (const auto& f : a.inputs) {
                auto it = producer_of.find(f.name);
                if (it == producer_of.end() || it->second == a.id) continue;
                if (!path_exists(succ, it->second, a.id))
                    defect(DefectCode::DataFlowWithoutDependency, it->second + "->" + a.id,
                           "consumes " + f.name + " without a dependency path from its producer");
            }
        }
    }

    return report;
}

std::vector<ActivityId> topological_order(const AbstractWorkflow& w) {
    std::map<ActivityId, int> indegree;
    std::map<ActivityId, std::vector<ActivityId>> succ;
    for (const auto& a : w.activities) indegree[a.id] = 0;
    for (const auto& [from, to] : w.dependencies) {
        if (!indegree.count(from) || !indegree.count(to))
            throw Error(ErrorCode::CyclicWorkflow, "workflow fails validation");
        succ[from].push_back(to);
        indegree[to]++;
    }

    // min-heap on id: smallest eligible activity first
    std::priority_queue<ActivityId, std::vector<ActivityId>, std::greater<>> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push(id);

    std::vector<ActivityId> order;
    order.reserve(indegree.size());
    while (!ready.empty()) {
        ActivityId id = ready.top();
        ready.pop();
        order.push_back(id);
        for (const auto& s : succ[id])
            if (--indegree[s] == 0) ready.push(s);
    }
    if (order.size() != indegree.size())
        throw Error(ErrorCode::CyclicWorkflow, "dependency graph has a directed cycle");
    return order;
}

const char* activity_state_name(ActivityState s) {
    switch (s) {
    case ActivityState::Inactive: return "Inactive";
    case ActivityState::Ready: return "Ready";
    case ActivityState::Executing: return "Executing";
    case ActivityState::Finished: return "Finished";
    case ActivityState::Faulted: return "Faulted";
    case ActivityState::Compensating: return "Compensating";
    case ActivityState::Aborted: return "Aborted";
    }
    return "?";
}

const char* lifecycle_event_name(LifecycleEvent e) {
    switch (e) {
    case LifecycleEvent::DepsMet: return "DepsMet";
    case LifecycleEvent::Dispatch: return "Dispatch";
    case LifecycleEvent::Complete: return "Complete";
    case LifecycleEvent::Fault: return "Fault";
    case LifecycleEvent::RecoveryRetry: return "RecoveryRetry";
    case LifecycleEvent::Rebind: return "Rebind";
    case LifecycleEvent::Escalate: return "Escalate";
    case LifecycleEvent::Cancel: return "Cancel";
    case LifecycleEvent::RollbackBegin: return "RollbackBegin";
    case LifecycleEvent::RollbackDone: return "RollbackDone";
    }
    return "?";
}

std::optional<ActivityState> transition_or_null(ActivityState s, LifecycleEvent e) {
    using S = ActivityState;
    using E = LifecycleEvent;
    if (e == E::RollbackBegin) return S::Compensating; // legal from every state
    switch (s) {
    case S::Inactive:
        if (e == E::DepsMet) return S::Ready;
        break;
    case S::Ready:
        if (e == E::Dispatch) return S::Executing;
        break;
    case S::Executing:
        if (e == E::Complete) return S::Finished;
        if (e == E::Fault) return S::Faulted;
        if (e == E::Cancel) return S::Aborted;
        break;
    case S::Faulted:
        if (e == E::RecoveryRetry || e == E::Rebind) return S::Ready;
        if (e == E::Escalate) return S::Aborted;
        break;
    case S::Compensating:
        if (e == E::RollbackDone) return S::Ready;
        break;
    case S::Finished:
    case S::Aborted:
        break; // terminal except RollbackBegin
    }
    return std::nullopt;
}

ActivityState transition(ActivityState s, LifecycleEvent e) {
    auto next = transition_or_null(s, e);
    if (!next) {
        std::ostringstream msg;
        msg << "no edge (" << activity_state_name(s) << ", " << lifecycle_event_name(e) << ")";
        throw Error(ErrorCode::InvalidTransition, msg.str());
    }
    return *next;
}

} // namespace gridflow
