#include "fwl/serialize.hpp"

#include <json.hpp>

namespace fwl {

using nlohmann::json;

std::string to_json(const PolyhedralFn& u) {
    json j;
    j["dimension"] = 1;
    json gens = json::array();
    for (const auto& g : u.generators()) gens.push_back({g.x, g.z});
    j["generators"] = std::move(gens);
    return j.dump();
}

std::string to_json(const GridFn& u) {
    json j;
    j["dimension"] = u.dim();
    json box = json::array();
    json shape = json::array();
    for (int a = 0; a < u.dim(); ++a) {
        box.push_back({u.box()[a].lo, u.box()[a].hi});
        shape.push_back(u.shape()[a]);
    }
    j["box"] = std::move(box);
    j["shape"] = std::move(shape);
    json vals = json::array();
    for (double v : u.values()) {
        if (is_finite(v))
            vals.push_back(v);
        else
            vals.push_back(nullptr);
    }
    j["values"] = std::move(vals);
    return j.dump();
}

std::string to_json(const EpigraphBody& k) {
    json j;
    j["dimension"] = 2;
    json verts = json::array();
    for (const auto& v : k.vertices()) verts.push_back({v.x, v.z});
    j["vertices"] = std::move(verts);
    return j.dump();
}

PolyhedralFn polyhedral_from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<PolyhedralFn::Generator> gens;
    for (const auto& g : j.at("generators"))
        gens.push_back({g.at(0).get<double>(), g.at(1).get<double>()});
    return PolyhedralFn::canonicalize(std::move(gens));
}

GridFn grid_from_json(const std::string& text) {
    json j = json::parse(text);
    int dim = j.at("dimension").get<int>();
    std::array<Interval, 2> box{Interval{0, 1}, Interval{0, 1}};
    std::array<int, 2> shape{2, 1};
    for (int a = 0; a < dim; ++a) {
        box[a] = {j.at("box").at(a).at(0).get<double>(), j.at("box").at(a).at(1).get<double>()};
        shape[a] = j.at("shape").at(a).get<int>();
    }
    std::vector<double> vals;
    for (const auto& v : j.at("values")) vals.push_back(v.is_null() ? kInf : v.get<double>());
    return GridFn(dim, box, shape, std::move(vals));
}

EpigraphBody body_from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<Vec2> verts;
    for (const auto& v : j.at("vertices"))
        verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return EpigraphBody::hull(std::move(verts));
}

}  // namespace fwl
