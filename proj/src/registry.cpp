#include "gridflow/registry.hpp"

#include <algorithm>

namespace gridflow {

ServiceId ServiceRegistry::register_service(const ServiceDescriptor& d) {
    if (d.id.empty() || d.perf_profile <= 0 || d.uptime_h < 0 || d.resource.empty())
        throw Error(ErrorCode::InvalidDescriptor, "descriptor invariants violated for '" + d.id + "'");
    if (services_.count(d.id))
        throw Error(ErrorCode::DuplicateService, d.id);
    services_[d.id] = d;
    reliability_[d.id] = ReliabilityRecord{d.id, 0, 0, std::nullopt};
    return d.id;
}

const ServiceDescriptor& ServiceRegistry::descriptor(const ServiceId& id) const {
    auto it = services_.find(id);
    if (it == services_.end()) throw Error(ErrorCode::UnknownService, id);
    return it->second;
}

bool service_matches(const ServiceDescriptor& d, const std::string& port_type,
                     const RequirementSet& req, WorkUnits task_work, VirtualTime now) {
    if (d.port_type != port_type) return false;
    for (const auto& cap : req.required_capabilities)
        if (!d.capabilities.count(cap)) return false;
    if (req.max_expected_duration_s &&
        task_work * d.perf_profile > *req.max_expected_duration_s)
        return false;
    if (req.min_uptime_h && d.uptime_h < *req.min_uptime_h) return false;
    if (d.expires_at && *d.expires_at <= now) return false;
    return true;
}

std::vector<ServiceId> ServiceRegistry::find_candidates(const std::string& port_type,
                                                        const RequirementSet& req,
                                                        WorkUnits task_work,
                                                        VirtualTime now) const {
    std::vector<const ServiceDescriptor*> hits;
    for (const auto& [id, d] : services_)
        if (service_matches(d, port_type, req, task_work, now)) hits.push_back(&d);
    std::sort(hits.begin(), hits.end(), [&](const auto* a, const auto* b) {
        double ea = task_work * a->perf_profile;
        double eb = task_work * b->perf_profile;
        if (ea != eb) return ea < eb;
        return a->id < b->id;
    });
    std::vector<ServiceId> out;
    out.reserve(hits.size());
    for (const auto* d : hits) out.push_back(d->id);
    return out;
}

ReliabilityRecord ServiceRegistry::record_outcome(const ServiceId& id, Outcome outcome,
                                                  VirtualTime at) {
    auto it = reliability_.find(id);
    if (it == reliability_.end()) throw Error(ErrorCode::UnknownService, id);
    if (outcome == Outcome::Success) {
        it->second.successes++;
    } else {
        it->second.failures++;
        it->second.last_failure_at = at;
    }
    return it->second;
}

const ReliabilityRecord& ServiceRegistry::reliability(const ServiceId& id) const {
    auto it = reliability_.find(id);
    if (it == reliability_.end()) throw Error(ErrorCode::UnknownService, id);
    return it->second;
}

void ServiceRegistry::refresh_uptime(const ServiceId& id, double uptime_h) {
    auto it = services_.find(id);
    if (it == services_.end()) throw Error(ErrorCode::UnknownService, id);
    it->second.uptime_h = uptime_h < 0 ? 0 : uptime_h;
}

void ServiceRegistry::expire_service(const ServiceId& id, VirtualTime at) {
    auto it = services_.find(id);
    if (it == services_.end()) throw Error(ErrorCode::UnknownService, id);
    it->second.expires_at = at;
}

std::vector<ServiceId> ServiceRegistry::services_on(const ResourceId& r) const {
    std::vector<ServiceId> out;
    for (const auto& [id, d] : services_)
        if (d.resource == r) out.push_back(id);
    return out;
}

std::vector<ServiceDescriptor> ServiceRegistry::all() const {
    std::vector<ServiceDescriptor> out;
    out.reserve(services_.size());
    for (const auto& [id, d] : services_) out.push_back(d);
    return out;
}

} // namespace gridflow
