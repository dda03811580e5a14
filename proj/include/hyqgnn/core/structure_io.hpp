#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyqgnn/core/structure.hpp"
#include "hyqgnn/errors.hpp"

namespace hyqgnn::core {

// Structure input format: a JSON array of documents
//   {"lattice": [[..3x3..]], "sites": [{"element": "Sr", "frac": [x,y,z]}, ...], "target_ev": number?}

inline CrystalStructure structure_from_json(const nlohmann::json& doc, std::size_t record_index) {
    const std::string at = " (record " + std::to_string(record_index) + ")";
    if (!doc.is_object()) throw SchemaError("structure record is not an object" + at);
    if (!doc.contains("lattice") || !doc.contains("sites")) {
        throw SchemaError("structure record needs 'lattice' and 'sites'" + at);
    }
    const auto& lat = doc["lattice"];
    if (!lat.is_array() || lat.size() != 3) throw SchemaError("'lattice' must be a 3x3 matrix" + at);
    Mat33 rows{};
    for (int i = 0; i < 3; ++i) {
        const auto& r = lat[i];
        if (!r.is_array() || r.size() != 3) throw SchemaError("'lattice' must be a 3x3 matrix" + at);
        for (int j = 0; j < 3; ++j) rows[i][j] = r[j].get<double>();
    }
    CrystalStructure s;
    try {
        s.lattice = Lattice(rows);
    } catch (const Error& e) {
        throw SchemaError(std::string(e.what()) + at);
    }
    for (const auto& site : doc["sites"]) {
        if (!site.contains("element") || !site.contains("frac")) {
            throw SchemaError("site needs 'element' and 'frac'" + at);
        }
        const auto& f = site["frac"];
        if (!f.is_array() || f.size() != 3) throw SchemaError("'frac' must be a 3-vector" + at);
        s.sites.emplace_back(site["element"].get<std::string>(),
                             Vec3{f[0].get<double>(), f[1].get<double>(), f[2].get<double>()});
    }
    if (doc.contains("target_ev") && !doc["target_ev"].is_null()) {
        s.target_energy = doc["target_ev"].get<double>();
    }
    return s;
}

inline nlohmann::json structure_to_json(const CrystalStructure& s) {
    nlohmann::json doc;
    doc["lattice"] = {
        {s.lattice.rows[0][0], s.lattice.rows[0][1], s.lattice.rows[0][2]},
        {s.lattice.rows[1][0], s.lattice.rows[1][1], s.lattice.rows[1][2]},
        {s.lattice.rows[2][0], s.lattice.rows[2][1], s.lattice.rows[2][2]},
    };
    doc["sites"] = nlohmann::json::array();
    for (const auto& site : s.sites) {
        doc["sites"].push_back({{"element", site.element},
                                {"frac", {site.frac[0], site.frac[1], site.frac[2]}}});
    }
    if (s.target_energy) doc["target_ev"] = *s.target_energy;
    return doc;
}

/// Reads a JSON file holding a list of structure documents.
/// An empty (or whitespace-only) file reads as an empty list.
inline std::vector<CrystalStructure> read_structures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!root.is_array()) throw SchemaError(path + ": top level must be a JSON array of structures");
    std::vector<CrystalStructure> out;
    out.reserve(root.size());
    for (std::size_t i = 0; i < root.size(); ++i) {
        out.push_back(structure_from_json(root[i], i));
    }
    return out;
}

inline void write_structures(const std::vector<CrystalStructure>& structures, const std::string& path) {
    nlohmann::json root = nlohmann::json::array();
    for (const auto& s : structures) root.push_back(structure_to_json(s));
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << root.dump(2) << "\n";
}

}  // namespace hyqgnn::core
