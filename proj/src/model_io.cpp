#include "dmp/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dmp/errors.hpp"

namespace dmp {

namespace {

using Json = nlohmann::ordered_json;

Json to_json_array(const Eigen::VectorXd& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Json to_json_matrix(const Eigen::MatrixXd& m) {
    Json arr = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) arr.push_back(to_json_array(m.row(r)));
    return arr;
}

Eigen::VectorXd vector_from(const Json& j, const std::string& key) {
    if (!j.is_array()) throw ValidationError("model: '" + key + "' must be an array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ValidationError("model: '" + key + "' must hold numbers");
        v[i] = j[i].get<double>();
    }
    return v;
}

Eigen::MatrixXd matrix_from(const Json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) throw ValidationError("model: '" + key + "' must be a 2-D array");
    const std::size_t cols = j[0].size();
    Eigen::MatrixXd m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        const Eigen::VectorXd row = vector_from(j[r], key);
        if (static_cast<std::size_t>(row.size()) != cols) {
            throw ValidationError("model: '" + key + "' rows differ in length");
        }
        m.row(r) = row;
    }
    return m;
}

const Json& field(const Json& j, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError("model: missing field '" + key + "'");
    return *it;
}

}  // namespace

std::string dmp_to_json(const Dmp& dmp) {
    dmp.validate();
    Json j;
    j["format"] = "dmp-model/1";
    j["dims"] = dmp.dims();
    j["elastic"] = to_json_array(dmp.elastic);
    j["damping"] = to_json_array(dmp.damping);
    j["tau"] = dmp.tau;
    j["alpha"] = dmp.alpha;
    j["demo_duration"] = dmp.demo_duration;
    j["start"] = to_json_array(dmp.start);
    j["goal"] = to_json_array(dmp.goal);
    j["basis"] = Json{{"centers", to_json_array(dmp.basis.centers())},
                      {"widths", to_json_array(dmp.basis.widths())}};
    j["weights"] = to_json_matrix(dmp.weights);
    return j.dump(2) + "\n";
}

void write_dmp_json(const Dmp& dmp, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);
    file << dmp_to_json(dmp);
    if (!file) throw IoError("write failed: " + path);
}

Dmp parse_dmp_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw ValidationError(std::string("model: invalid JSON: ") + err.what());
    }
    if (!j.is_object()) throw ValidationError("model: top level must be an object");
    const std::set<std::string> allowed = {"format", "dims",  "elastic", "damping",
                                           "tau",    "alpha", "demo_duration", "start",
                                           "goal",   "basis", "weights"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) throw ValidationError("model: unknown field '" + key + "'");
    }
    if (field(j, "format").get<std::string>() != "dmp-model/1") {
        throw ValidationError("model: unsupported format tag");
    }

    const Json& basis_json = field(j, "basis");
    for (const auto& [key, value] : basis_json.items()) {
        (void)value;
        if (key != "centers" && key != "widths") {
            throw ValidationError("model: unknown basis field '" + key + "'");
        }
    }
    BasisSet basis(vector_from(field(basis_json, "centers"), "basis.centers"),
                   vector_from(field(basis_json, "widths"), "basis.widths"));

    Dmp dmp{vector_from(field(j, "elastic"), "elastic"),
            vector_from(field(j, "damping"), "damping"),
            field(j, "tau").get<double>(),
            field(j, "alpha").get<double>(),
            std::move(basis),
            matrix_from(field(j, "weights"), "weights"),
            vector_from(field(j, "start"), "start"),
            vector_from(field(j, "goal"), "goal"),
            field(j, "demo_duration").get<double>()};
    if (field(j, "dims").get<int>() != dmp.dims()) {
        throw ValidationError("model: 'dims' disagrees with field sizes");
    }
    dmp.validate();
    return dmp;
}

Dmp read_dmp_json(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_dmp_json(buffer.str());
}

}  // namespace dmp
