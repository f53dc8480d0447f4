#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridflow/types.hpp"
#include "gridflow/workflow.hpp"

namespace gridflow {

// Scheduler-side knowledge about one grid node. Queue/running bookkeeping is
// maintained by the allocator itself; liveness and speed arrive via periodic
// resource reports.
struct ResourceInfo {
    ResourceId id;
    double speed = 1.0;         // work units per second
    Bytes disk_capacity = 0;
    Bytes disk_used = 0;        // bytes of resident replicas
    Bytes disk_reserved = 0;    // output bytes committed by in-flight tasks
    std::set<std::string> running; // task ids currently executing
    std::vector<std::string> queue; // pending task ids, allocation order
    std::set<ServiceId> deployed_services;
    VirtualTime last_heartbeat = 0;
    bool alive = true;
    double bandwidth = 1.0;     // bytes per second per peer, uniform
    VirtualTime busy_until = 0; // when all accepted work drains
    double report_period_s = 5.0;
    double heartbeat_timeout_s = 15.0; // default 3x report period
};

enum class AllocationPolicy { FCFS, LoadBalance, MinExecTime, MinDataTransfer };

const char* allocation_policy_name(AllocationPolicy p);
std::optional<AllocationPolicy> parse_allocation_policy(const std::string& s);

// Unit of allocation: one dispatch attempt of an activity.
struct TaskInput {
    FileName name;
    Bytes size = 0;
    std::set<ResourceId> locations; // current replica hosts
};

struct Task {
    std::string id; // activity id + attempt ordinal
    ActivityId activity;
    WorkUnits work = 0;
    std::vector<TaskInput> inputs;
    Bytes output_bytes = 0; // total declared outputs, for capacity checks
    std::set<ResourceId> candidate_resources;
    VirtualTime arrival = 0;
};

// Immutable copy of the fields a placement decision reads. Recorded per
// decision so an independent oracle can replay the choice.
struct ResourceSnapshot {
    ResourceId id;
    bool alive = true;
    double speed = 1.0;
    double bandwidth = 1.0;
    Bytes disk_capacity = 0;
    Bytes disk_used = 0;
    Bytes disk_reserved = 0;
    int backlog = 0;            // |running| + |queue|
    VirtualTime busy_until = 0;
    std::set<FileName> resident; // task input files already on this node
};

struct ViewSnapshot {
    VirtualTime now = 0;
    std::vector<ResourceSnapshot> resources; // candidates only, id order
};

struct AllocationDecision {
    Task task;
    AllocationPolicy policy = AllocationPolicy::FCFS;
    ViewSnapshot view;
    ResourceId chosen;
};

// Placement formulas, pure over a snapshot:
//   FCFS          min backlog among capacity-accepting candidates
//   LoadBalance   min backlog among capacity-accepting candidates
//   MinExecTime   min wait(r) + work/speed(r), wait = max(0, busy_until - now)
//   MinDataTransfer  min missing input bytes / bandwidth, ties by MinExecTime
// All ties break on lexicographic id. Dead resources never qualify; a
// capacity-rejecting resource is never chosen (storage-aware constraint).
// Returns nullopt when no alive candidate exists; throws nothing.
std::optional<ResourceId> choose_resource(const Task& t, AllocationPolicy policy,
                                          const ViewSnapshot& view);

// True when the task fits: disk_used + reserved + missing inputs + outputs
// within capacity.
bool snapshot_accepts(const ResourceSnapshot& r, const Task& t);

class ResourceView {
public:
    void add_resource(const ResourceInfo& r);
    bool has(const ResourceId& id) const { return resources_.count(id) > 0; }
    ResourceInfo& at(const ResourceId& id);
    const ResourceInfo& at(const ResourceId& id) const;
    const std::map<ResourceId, ResourceInfo>& all() const { return resources_; }

    struct Report {
        ResourceId resource;
        std::optional<double> speed;
        std::optional<Bytes> disk_capacity;
        std::optional<std::set<ServiceId>> deployed_services;
    };

    // Periodic update: refreshes state, stamps the heartbeat, recomputes
    // liveness. UnknownResource for unregistered ids.
    void update_resources(const Report& report, VirtualTime now);

    // Flags resources whose heartbeat aged past the timeout. Each death is
    // reported exactly once; revival requires a fresh heartbeat.
    std::vector<ResourceId> detect_failures(VirtualTime now);

    // Snapshot restricted to the task's candidate set (id order).
    ViewSnapshot snapshot_for(const Task& t, VirtualTime now) const;

    // Decide and book: appends the task to the chosen resource's queue.
    // Throws NoAliveCandidate when no alive candidate is available.
    ResourceId allocate(const Task& t, AllocationPolicy policy, VirtualTime now,
                        std::vector<AllocationDecision>* log = nullptr);

    // Allocator bookkeeping as tasks move through their run.
    void task_started(const ResourceId& r, const std::string& task_id);
    void task_left(const ResourceId& r, const std::string& task_id);

private:
    std::map<ResourceId, ResourceInfo> resources_;
};

} // namespace gridflow
