#include "gridflow/dyag.hpp"

#include <algorithm>
#include <limits>

namespace gridflow {

const char* allocation_policy_name(AllocationPolicy p) {
    switch (p) {
    case AllocationPolicy::FCFS: return "fcfs";
    case AllocationPolicy::LoadBalance: return "load";
    case AllocationPolicy::MinExecTime: return "mintime";
    case AllocationPolicy::MinDataTransfer: return "mindata";
    }
    return "?";
}

std::optional<AllocationPolicy> parse_allocation_policy(const std::string& s) {
    if (s == "fcfs") return AllocationPolicy::FCFS;
    if (s == "load") return AllocationPolicy::LoadBalance;
    if (s == "mintime") return AllocationPolicy::MinExecTime;
    if (s == "mindata") return AllocationPolicy::MinDataTransfer;
    return std::nullopt;
}

namespace {

Bytes missing_input_bytes(const ResourceSnapshot& r, const Task& t) {
    Bytes total = 0;
    for (const auto& in : t.inputs)
        if (!r.resident.count(in.name)) total += in.size;
    return total;
}

double exec_estimate(const ResourceSnapshot& r, const Task& t, VirtualTime now) {
    double wait = r.busy_until > now ? r.busy_until - now : 0.0;
    return wait + t.work / r.speed;
}

double transfer_estimate(const ResourceSnapshot& r, const Task& t) {
    return static_cast<double>(missing_input_bytes(r, t)) / r.bandwidth;
}

} // namespace

bool snapshot_accepts(const ResourceSnapshot& r, const Task& t) {
    Bytes needed = missing_input_bytes(r, t) + t.output_bytes;
    return r.disk_used + r.disk_reserved + needed <= r.disk_capacity;
}

std::optional<ResourceId> choose_resource(const Task& t, AllocationPolicy policy,
                                          const ViewSnapshot& view) {
    const ResourceSnapshot* best = nullptr;
    bool any_alive = false;

    for (const auto& r : view.resources) {
        if (!r.alive || !t.candidate_resources.count(r.id)) continue;
        any_alive = true;
        if (!snapshot_accepts(r, t)) continue;
        if (!best) {
            best = &r;
            continue;
        }
        bool better = false;
        switch (policy) {
        case AllocationPolicy::FCFS:
        case AllocationPolicy::LoadBalance:
            better = r.backlog < best->backlog ||
                     (r.backlog == best->backlog && r.id < best->id);
            break;
        case AllocationPolicy::MinExecTime: {
            double a = exec_estimate(r, t, view.now);
            double b = exec_estimate(*best, t, view.now);
            better = a < b || (a == b && r.id < best->id);
            break;
        }
        case AllocationPolicy::MinDataTransfer: {
            double a = transfer_estimate(r, t);
            double b = transfer_estimate(*best, t);
            if (a != b) {
                better = a < b;
            } else {
                double ea = exec_estimate(r, t, view.now);
                double eb = exec_estimate(*best, t, view.now);
                better = ea < eb || (ea == eb && r.id < best->id);
            }
            break;
        }
        }
        if (better) best = &r;
    }

    (void)any_alive;
    if (best) return best->id;
    return std::nullopt;
}

void ResourceView::add_resource(const ResourceInfo& r) {
    if (r.id.empty() || r.speed <= 0 || r.bandwidth <= 0 || r.disk_capacity < 0)
        throw Error(ErrorCode::ConfigError, "resource invariants violated for '" + r.id + "'");
    if (resources_.count(r.id))
        throw Error(ErrorCode::ConfigError, "duplicate resource '" + r.id + "'");
    resources_[r.id] = r;
}

ResourceInfo& ResourceView::at(const ResourceId& id) {
    auto it = resources_.find(id);
    if (it == resources_.end()) throw Error(ErrorCode::UnknownResource, id);
    return it->second;
}

const ResourceInfo& ResourceView::at(const ResourceId& id) const {
    auto it = resources_.find(id);
    if (it == resources_.end()) throw Error(ErrorCode::UnknownResource, id);
    return it->second;
}

void ResourceView::update_resources(const Report& report, VirtualTime now) {
    auto it = resources_.find(report.resource);
    if (it == resources_.end()) throw Error(ErrorCode::UnknownResource, report.resource);
    ResourceInfo& r = it->second;
    if (report.speed) r.speed = *report.speed;
    if (report.disk_capacity) r.disk_capacity = *report.disk_capacity;
    if (report.deployed_services) r.deployed_services = *report.deployed_services;
    r.last_heartbeat = now;
    r.alive = true;
}

std::vector<ResourceId> ResourceView::detect_failures(VirtualTime now) {
    std::vector<ResourceId> newly_dead;
    for (auto& [id, r] : resources_) {
        if (r.alive && now - r.last_heartbeat > r.heartbeat_timeout_s) {
            r.alive = false;
            newly_dead.push_back(id);
        }
    }
    return newly_dead;
}

ViewSnapshot ResourceView::snapshot_for(const Task& t, VirtualTime now) const {
    ViewSnapshot snap;
    snap.now = now;
    for (const auto& [id, r] : resources_) {
        if (!t.candidate_resources.count(id)) continue;
        ResourceSnapshot s;
        s.id = id;
        s.alive = r.alive;
        s.speed = r.speed;
        s.bandwidth = r.bandwidth;
        s.disk_capacity = r.disk_capacity;
        s.disk_used = r.disk_used;
        s.disk_reserved = r.disk_reserved;
        s.backlog = static_cast<int>(r.running.size() + r.queue.size());
        s.busy_until = r.busy_until;
        for (const auto& in : t.inputs)
            if (in.locations.count(id)) s.resident.insert(in.name);
        snap.resources.push_back(std::move(s));
    }
    return snap;
}

ResourceId ResourceView::allocate(const Task& t, AllocationPolicy policy, VirtualTime now,
                                  std::vector<AllocationDecision>* log) {
    ViewSnapshot snap = snapshot_for(t, now);
    auto chosen = choose_resource(t, policy, snap);
    if (!chosen)
        throw Error(ErrorCode::NoAliveCandidate, "task " + t.id);
    resources_.at(*chosen).queue.push_back(t.id);
    if (log) log->push_back({t, policy, std::move(snap), *chosen});
    return *chosen;
}

void ResourceView::task_started(const ResourceId& r, const std::string& task_id) {
    ResourceInfo& info = at(r);
    auto it = std::find(info.queue.begin(), info.queue.end(), task_id);
    if (it != info.queue.end()) info.queue.erase(it);
    info.running.insert(task_id);
}

void ResourceView::task_left(const ResourceId& r, const std::string& task_id) {
    ResourceInfo& info = at(r);
    auto it = std::find(info.queue.begin(), info.queue.end(), task_id);
    if (it != info.queue.end()) info.queue.erase(it);
    info.running.erase(task_id);
}

} // namespace gridflow
