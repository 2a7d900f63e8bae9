#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bourgainlab/group.hpp"

namespace bourgainlab {

/**
 * Certificates are brute-force-checkable objects: verification uses only
 * group arithmetic and set membership, never the analytic machinery that
 * produced them.
 */

struct ThreeAPCertificate {
    std::int64_t x = 0, y = 0, z = 0;  // x + z = 2*y, not all equal
    std::string group;                 // producing group, echoed for cross-checks

    bool proper(const GroupSpec& g) const;  // x, y, z pairwise distinct
};

// Checks x+z = 2y, x,y,z in A, and (x,y,z) not all equal.
bool verify_threeap(const ThreeAPCertificate& c, const GroupSet& a, std::string* why = nullptr);

struct StructureCertificate {
    enum class Kind { proper_ap, subgroup_coset };
    Kind kind = Kind::proper_ap;
    std::int64_t base = 0;
    std::int64_t step = 0;                    // proper_ap
    std::int64_t length = 0;                  // proper_ap
    std::vector<std::int64_t> generators;     // subgroup_coset
    std::string group;

    // All certified elements: base + [0,length-1]*step, or base + <generators>.
    std::vector<std::int64_t> elements(const GroupSpec& g) const;
};

// proper_ap: all terms distinct and inside the container.
// subgroup_coset: generated set is a subgroup and base + subgroup is inside
// the container.
bool verify_structure(const StructureCertificate& c, const GroupSet& container,
                      std::string* why = nullptr);

std::string certificate_to_json(const ThreeAPCertificate& c, const GroupSpec& g);
std::string certificate_to_json(const StructureCertificate& c, const GroupSpec& g);

// Parses either certificate kind; exactly one of the outputs is filled.
// Returns "threeap" or "structure".
std::string certificate_from_json(const std::string& text, ThreeAPCertificate* ap,
                                  StructureCertificate* st);

}  // namespace bourgainlab
