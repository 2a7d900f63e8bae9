#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bourgainlab/certificates.hpp"
#include "bourgainlab/gen.hpp"
#include "bourgainlab/group.hpp"

namespace bl = bourgainlab;

// Independent certificate checker. Links only the group layer, the
// certificate layer and the set generators: the set is regenerated from
// (group, set, seed) and the certificate is checked by plain set arithmetic.
// Exit codes: 0 verified, 1 rejected, 2 usage or config error.
int main(int argc, char** argv) {
    CLI::App app{"verify a certificate against a regenerated set"};
    std::string cert_path, group, set;
    std::uint64_t seed = 42;
    app.add_option("cert", cert_path, "certificate JSON file")->required();
    app.add_option("--group", group, "group spec, e.g. Z101 or Z4xZ8")->required();
    app.add_option("--set", set, "generator spec used to produce A")->required();
    app.add_option("--seed", seed, "seed used to produce A");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    bl::GroupSpec g;
    bl::GroupSet a;
    std::string text;
    try {
        g = bl::parse_group_spec(group);
        a = bl::gen_set(g, set, seed);
        std::ifstream in(cert_path);
        if (!in) throw bl::contract_error("cannot open " + cert_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    }

    try {
        bl::ThreeAPCertificate ap;
        bl::StructureCertificate st;
        std::string kind = bl::certificate_from_json(text, &ap, &st);
        std::string why;
        if (kind == "threeap") {
            if (ap.group != g.str()) {
                std::cout << "REJECTED: certificate group " << ap.group << " does not match "
                          << g.str() << std::endl;
                return 1;
            }
            if (bl::verify_threeap(ap, a, &why)) {
                std::cout << "VERIFIED: (" << ap.x << "," << ap.y << "," << ap.z
                          << ") is a nontrivial progression in A" << std::endl;
                return 0;
            }
            std::cout << "REJECTED: " << why << std::endl;
            return 1;
        }
        if (st.group != g.str()) {
            std::cout << "REJECTED: certificate group " << st.group << " does not match "
                      << g.str() << std::endl;
            return 1;
        }
        bl::GroupSet container = bl::set_arith(a, a, bl::SetOp::sum);
        if (bl::verify_structure(st, container, &why)) {
            bool coset = st.kind == bl::StructureCertificate::Kind::subgroup_coset;
            std::cout << "VERIFIED: " << (coset ? "subgroup coset" : "proper progression")
                      << " of size " << st.elements(g).size() << " inside A+A" << std::endl;
            return 0;
        }
        std::cout << "REJECTED: " << why << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
