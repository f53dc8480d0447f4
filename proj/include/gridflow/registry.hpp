#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gridflow/types.hpp"
#include "gridflow/workflow.hpp"

namespace gridflow {

struct ServiceDescriptor {
    ServiceId id;
    std::string port_type;
    std::set<std::string> capabilities;
    double perf_profile = 1.0; // expected seconds per work unit
    double uptime_h = 0.0;     // hours continuously operational
    ResourceId resource;       // hosting resource
    std::string interface_url; // interface description URL stand-in
    std::optional<VirtualTime> expires_at;
};

struct ReliabilityRecord {
    ServiceId service;
    std::int64_t successes = 0;
    std::int64_t failures = 0;
    std::optional<VirtualTime> last_failure_at;
};

enum class Outcome { Success, Failure };

// Concrete service store answering find-candidates queries. Qualification
// combines the three rule families: functionality (capability tags),
// performance (estimated duration vs. bound) and reliability (uptime).
class ServiceRegistry {
public:
    ServiceId register_service(const ServiceDescriptor& d);

    const ServiceDescriptor& descriptor(const ServiceId& id) const;
    bool has(const ServiceId& id) const { return services_.count(id) > 0; }

    // Candidates sorted by estimated duration (task_work * perf_profile),
    // ties broken by id. Empty result is valid.
    std::vector<ServiceId> find_candidates(const std::string& port_type,
                                           const RequirementSet& req,
                                           WorkUnits task_work,
                                           VirtualTime now = 0) const;

    ReliabilityRecord record_outcome(const ServiceId& id, Outcome outcome, VirtualTime at);
    const ReliabilityRecord& reliability(const ServiceId& id) const;

    // Monitoring refresh: uptime is a stored scalar, not derived from a log.
    void refresh_uptime(const ServiceId& id, double uptime_h);
    void expire_service(const ServiceId& id, VirtualTime at);

    std::vector<ServiceId> services_on(const ResourceId& r) const;
    std::size_t size() const { return services_.size(); }

    // For property tests: all descriptors in id order.
    std::vector<ServiceDescriptor> all() const;

private:
    std::map<ServiceId, ServiceDescriptor> services_;
    std::map<ServiceId, ReliabilityRecord> reliability_;
};

// Single qualification predicate, exposed so tests can brute-force it.
bool service_matches(const ServiceDescriptor& d, const std::string& port_type,
                     const RequirementSet& req, WorkUnits task_work, VirtualTime now);

} // namespace gridflow
