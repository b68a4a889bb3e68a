#include "parnode/json_io.hpp"

#include <fstream>
#include <set>

namespace parnode {

namespace {

void require_keys(const Json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
    if (!j.is_object())
        fail(ErrorCode::ParseError, where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!required.count(key) && !optional.count(key))
            fail(ErrorCode::ParseError, where + ": unexpected field '" + key + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key))
            fail(ErrorCode::ParseError, where + ": missing field '" + key + "'");
}

long long get_int(const Json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (!v.is_number_integer())
        fail(ErrorCode::ParseError, where + "." + key + ": expected an integer");
    return v.get<long long>();
}

std::string get_string(const Json& j, const std::string& key, const std::string& where) {
    const auto& v = j.at(key);
    if (!v.is_string())
        fail(ErrorCode::ParseError, where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<long long> get_int_array(const Json& v, const std::string& where) {
    if (!v.is_array())
        fail(ErrorCode::ParseError, where + ": expected an array of integers");
    std::vector<long long> out;
    for (const auto& item : v) {
        if (!item.is_number_integer())
            fail(ErrorCode::ParseError, where + ": expected an array of integers");
        out.push_back(item.get<long long>());
    }
    return out;
}

Component parse_component(const std::string& text, const std::string& where) {
    if (text == "1") return Component::C1;
    if (text == "2") return Component::C2;
    if (text == "node1") return Component::Node1;
    if (text == "node2") return Component::Node2;
    fail(ErrorCode::ParseError,
         where + ".component: expected \"1\", \"2\", \"node1\" or \"node2\"");
}

ParabolicPoint parse_point(const Json& j, std::size_t index) {
    const std::string where = "points[" + std::to_string(index) + "]";
    require_keys(j, {"id", "component", "flag_type", "weights", "alpha"}, {}, where);
    ParabolicPoint p;
    p.id = get_string(j, "id", where);
    p.component = parse_component(get_string(j, "component", where), where);
    p.flag_type = get_int_array(j.at("flag_type"), where + ".flag_type");
    p.weights = get_int_array(j.at("weights"), where + ".weights");
    p.alpha = get_int(j, "alpha", where);
    return p;
}

SheafNumerics parse_numerics(const Json& j, const std::string& where) {
    const auto rank_pair = get_int_array(j.at("rank_pair"), where + ".rank_pair");
    if (rank_pair.size() != 2)
        fail(ErrorCode::ParseError, where + ".rank_pair: expected two entries");
    SheafNumerics s;
    s.r1 = rank_pair[0];
    s.r2 = rank_pair[1];
    s.chi = get_int(j, "chi", where);
    if (j.contains("flag_dims")) {
        const auto& dims = j.at("flag_dims");
        if (!dims.is_object())
            fail(ErrorCode::ParseError, where + ".flag_dims: expected an object");
        for (const auto& [id, arr] : dims.items())
            s.flag_dims[id] = get_int_array(arr, where + ".flag_dims." + id);
    }
    return s;
}

}  // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

DegenerationSpec parse_spec(const Json& j, bool enforce_balance) {
    require_keys(j, {"g1", "g2", "c1", "c2", "r", "k", "chi", "ell_total", "points"},
                 {"ambient", "subobjects"}, "spec");
    DegenerationSpec spec;
    spec.g1 = get_int(j, "g1", "spec");
    spec.g2 = get_int(j, "g2", "spec");
    spec.c1 = get_int(j, "c1", "spec");
    spec.c2 = get_int(j, "c2", "spec");
    spec.r = get_int(j, "r", "spec");
    spec.k = get_int(j, "k", "spec");
    spec.chi = get_int(j, "chi", "spec");
    spec.ell_total = get_int(j, "ell_total", "spec");
    const auto& points = j.at("points");
    if (!points.is_array())
        fail(ErrorCode::ParseError, "points: expected an array");
    for (std::size_t i = 0; i < points.size(); ++i)
        spec.points.push_back(parse_point(points[i], i));
    validate_spec(spec, enforce_balance);
    return spec;
}

DegenerationSpec load_spec(const std::string& path, bool enforce_balance) {
    return parse_spec(load_json_file(path), enforce_balance);
}

Json serialize_spec(const DegenerationSpec& spec) {
    Json j;
    j["g1"] = spec.g1;
    j["g2"] = spec.g2;
    j["c1"] = spec.c1;
    j["c2"] = spec.c2;
    j["r"] = spec.r;
    j["k"] = spec.k;
    j["chi"] = spec.chi;
    j["ell_total"] = spec.ell_total;
    j["points"] = Json::array();
    for (const auto& p : spec.points) {
        Json pj;
        pj["id"] = p.id;
        pj["component"] = component_name(p.component);
        pj["flag_type"] = p.flag_type;
        pj["weights"] = p.weights;
        pj["alpha"] = p.alpha;
        j["points"].push_back(std::move(pj));
    }
    return j;
}

CertifyInput load_certify_input(const std::string& path) {
    const Json j = load_json_file(path);
    CertifyInput input;
    input.spec = parse_spec(j, true);
    if (!j.contains("ambient"))
        fail(ErrorCode::ParseError, "spec: missing field 'ambient'");
    if (!j.contains("subobjects"))
        fail(ErrorCode::ParseError, "spec: missing field 'subobjects'");

    const auto& amb = j.at("ambient");
    require_keys(amb, {"rank_pair", "chi"}, {"flag_dims", "dim_q"}, "ambient");
    input.ambient = parse_numerics(amb, "ambient");
    if (amb.contains("dim_q"))
        input.ambient_dim_q = get_int(amb, "dim_q", "ambient");

    const auto& subs = j.at("subobjects");
    if (!subs.is_array())
        fail(ErrorCode::ParseError, "subobjects: expected an array");
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string where = "subobjects[" + std::to_string(i) + "]";
        require_keys(subs[i], {"label", "rank_pair", "chi"},
                     {"flag_dims", "dim_q_image"}, where);
        SubobjectProfile profile;
        profile.label = get_string(subs[i], "label", where);
        profile.numerics = parse_numerics(subs[i], where);
        if (subs[i].contains("dim_q_image"))
            profile.dim_q_image = get_int(subs[i], "dim_q_image", where);
        input.profiles.push_back(std::move(profile));
    }
    return input;
}

DimQuery load_dim_query(const std::string& path) {
    const Json j = load_json_file(path);
    require_keys(j, {"genus", "r", "k", "labels"}, {}, "query");
    DimQuery q;
    q.genus = get_int(j, "genus", "query");
    q.r = get_int(j, "r", "query");
    q.k = get_int(j, "k", "query");
    const auto& labels = j.at("labels");
    if (!labels.is_array())
        fail(ErrorCode::ParseError, "query.labels: expected an array of labels");
    for (std::size_t i = 0; i < labels.size(); ++i)
        q.labels.push_back(
            get_int_array(labels[i], "query.labels[" + std::to_string(i) + "]"));
    return q;
}

LocalModelRequest load_local_model_request(const std::string& path) {
    const Json j = load_json_file(path);
    require_keys(j, {"n", "q"}, {}, "request");
    LocalModelRequest req;
    req.n = get_int(j, "n", "request");
    req.q = get_int(j, "q", "request");
    return req;
}

}  // namespace parnode
