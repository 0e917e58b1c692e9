#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "symmix/commute.hpp"
#include "symmix/engine.hpp"
#include "symmix/reduce.hpp"
#include "symmix/train.hpp"
#include "symmix/zbasis.hpp"

namespace symmix {

using json = nlohmann::json;

// Bitmasks serialize as lowercase hex with qubit 0 in the least significant
// bit; readers also accept an optional 0x prefix.

json term_to_json(const Term& t);
Term term_from_json(const json& j);

json pair_to_json(const HermitianPair& h);
HermitianPair pair_from_json(const json& j);

json pairs_to_json(const std::vector<HermitianPair>& hs);
std::vector<HermitianPair> pairs_from_json(const json& j);

json groups_to_json(const GeneratorCollection& c);
GeneratorCollection groups_from_json(const json& j);

json poly_to_json(const PolyConstraint& c);
PolyConstraint poly_from_json(const json& j, int n);

json linear_to_json(const LinearConstraint& c);
LinearConstraint linear_from_json(const json& j);

// Constraint files: {"n": int, "constraints": [entry...]} where each entry
// is either the monomial form {"monomials":[{"a","b","beta"}],"rhs"} or the
// linear shorthand {"c":[int],"rhs"}.
struct ConstraintsDoc {
    int n = 0;
    std::vector<PolyConstraint> poly;     // every entry, converted as needed
    std::vector<LinearConstraint> linear; // only the shorthand entries
    std::vector<bool> entry_is_linear;    // per entry, in file order
    size_t entries = 0;
    bool all_linear() const { return linear.size() == entries; }
};
json constraints_to_json(const ConstraintsDoc& doc);
ConstraintsDoc constraints_from_json(const json& j);

json instance_to_json(const SatInstance& inst);
SatInstance instance_from_json(const json& j);

json mds_to_json(const MdsResult& m);
MdsResult mds_from_json(const json& j);

json ising_to_json(const IsingConstraint& c);
IsingConstraint ising_from_json(const json& j);

json diffusor_to_json(const DiffusorSpec& d);
DiffusorSpec diffusor_from_json(const json& j);

json program_to_json(const MixerProgram& p);
MixerProgram program_from_json(const json& j);

std::string kind_to_string(AnsatzKind k);
AnsatzKind kind_from_string(const std::string& s);

json ansatz_to_json(const AnsatzSpec& a);
AnsatzSpec ansatz_from_json(const json& j);

json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

json fit_to_json(const CurveFit& f);
CurveFit fit_from_json(const json& j);

std::string records_to_csv(const std::vector<BenchmarkRecord>& rs);
std::vector<BenchmarkRecord> records_from_csv(const std::string& text);

uint64_t fnv1a64(const std::string& data);
std::string digest_hex(const std::string& data);

struct RunManifest {
    std::string tool = "symmix";
    std::string version;
    std::string subcommand;
    json config;
    std::map<std::string, std::string> input_digests;
    double wall_ms = 0.0;
};
json manifest_to_json(const RunManifest& m);

extern const char* kToolVersion;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json load_json_file(const std::string& path);
std::string dump_json(const json& j, bool pretty);

} // namespace symmix
