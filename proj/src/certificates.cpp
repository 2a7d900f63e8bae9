#include "bourgainlab/certificates.hpp"

#include <set>

#include "json.hpp"

namespace bourgainlab {

namespace {
void fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
}
}  // namespace

bool ThreeAPCertificate::proper(const GroupSpec&) const {
    return x != y && y != z && x != z;
}

bool verify_threeap(const ThreeAPCertificate& c, const GroupSet& a, std::string* why) {
    const GroupSpec& g = a.spec();
    if (c.x < 0 || c.x >= g.order || c.y < 0 || c.y >= g.order || c.z < 0 || c.z >= g.order) {
        fail(why, "index out of range");
        return false;
    }
    if (!a.contains(c.x) || !a.contains(c.y) || !a.contains(c.z)) {
        fail(why, "progression term not in the set");
        return false;
    }
    if (g.add(c.x, c.z) != g.scale(2, c.y)) {
        fail(why, "x + z != 2y");
        return false;
    }
    if (c.x == c.y && c.y == c.z) {
        fail(why, "trivial progression (x = y = z)");
        return false;
    }
    return true;
}

std::vector<std::int64_t> StructureCertificate::elements(const GroupSpec& g) const {
    std::vector<std::int64_t> out;
    if (kind == Kind::proper_ap) {
        std::int64_t cur = base;
        for (std::int64_t i = 0; i < length; ++i) {
            out.push_back(cur);
            cur = g.add(cur, step);
        }
    } else {
        GroupSet h = subgroup_generated(g, generators);
        h.for_each([&](std::int64_t e) { out.push_back(g.add(base, e)); });
    }
    return out;
}

bool verify_structure(const StructureCertificate& c, const GroupSet& container,
                      std::string* why) {
    const GroupSpec& g = container.spec();
    if (c.kind == StructureCertificate::Kind::proper_ap) {
        if (c.length < 1) {
            fail(why, "empty progression");
            return false;
        }
        std::set<std::int64_t> seen;
        std::int64_t cur = c.base;
        for (std::int64_t i = 0; i < c.length; ++i) {
            if (cur < 0 || cur >= g.order || !container.contains(cur)) {
                fail(why, "progression term " + std::to_string(i) + " not in the container");
                return false;
            }
            if (!seen.insert(cur).second) {
                fail(why, "progression not proper: repeated term");
                return false;
            }
            cur = g.add(cur, c.step);
        }
        return true;
    }
    for (auto gen : c.generators) {
        if (gen < 0 || gen >= g.order) {
            fail(why, "generator index out of range");
            return false;
        }
    }
    GroupSet h = subgroup_generated(g, c.generators);
    if (!is_subgroup(h)) {
        fail(why, "generated set is not closed");  // unreachable by construction
        return false;
    }
    bool ok = true;
    std::int64_t bad = -1;
    h.for_each([&](std::int64_t e) {
        std::int64_t t = g.add(c.base, e);
        if (!container.contains(t) && ok) { ok = false; bad = t; }
    });
    if (!ok) {
        fail(why, "coset element " + element_str(g, bad) + " not in the container");
        return false;
    }
    return true;
}

std::string certificate_to_json(const ThreeAPCertificate& c, const GroupSpec& g) {
    nlohmann::ordered_json j;
    j["kind"] = "threeap";
    j["group"] = g.str();
    j["x"] = g.coords_of(c.x);
    j["y"] = g.coords_of(c.y);
    j["z"] = g.coords_of(c.z);
    j["class"] = c.proper(g) ? "proper" : "degenerate";
    return j.dump(2);
}

std::string certificate_to_json(const StructureCertificate& c, const GroupSpec& g) {
    nlohmann::ordered_json j;
    j["group"] = g.str();
    if (c.kind == StructureCertificate::Kind::proper_ap) {
        j["kind"] = "proper_ap";
        j["base"] = g.coords_of(c.base);
        j["step"] = g.coords_of(c.step);
        j["length"] = c.length;
    } else {
        j["kind"] = "subgroup_coset";
        j["base"] = g.coords_of(c.base);
        auto gens = nlohmann::ordered_json::array();
        for (auto e : c.generators) gens.push_back(g.coords_of(e));
        j["generators"] = gens;
    }
    return j.dump(2);
}

std::string certificate_from_json(const std::string& text, ThreeAPCertificate* ap,
                                  StructureCertificate* st) {
    auto j = nlohmann::json::parse(text);
    require(j.contains("kind") && j.contains("group"), "certificate missing kind/group");
    GroupSpec g = parse_group_spec(j["group"].get<std::string>());
    auto idx = [&](const nlohmann::json& v) {
        return g.index_of(v.get<std::vector<std::int64_t>>());
    };
    std::string kind = j["kind"].get<std::string>();
    if (kind == "threeap") {
        require(ap != nullptr, "no output slot for a threeap certificate");
        ap->x = idx(j["x"]);
        ap->y = idx(j["y"]);
        ap->z = idx(j["z"]);
        ap->group = g.str();
        return "threeap";
    }
    require(st != nullptr, "no output slot for a structure certificate");
    st->group = g.str();
    if (kind == "proper_ap") {
        st->kind = StructureCertificate::Kind::proper_ap;
        st->base = idx(j["base"]);
        st->step = idx(j["step"]);
        st->length = j["length"].get<std::int64_t>();
    } else if (kind == "subgroup_coset") {
        st->kind = StructureCertificate::Kind::subgroup_coset;
        st->base = idx(j["base"]);
        st->generators.clear();
        for (const auto& v : j["generators"]) st->generators.push_back(idx(v));
    } else {
        throw contract_error("unknown certificate kind: " + kind);
    }
    return "structure";
}

}  // namespace bourgainlab
