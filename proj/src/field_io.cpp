// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#include "eplab/field_io.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

namespace eplab {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts are unsupported");

void write_field_snapshot(const std::filesystem::path& path, const RealField& f,
                          const std::string& name, double time) {
    nlohmann::json header{{"dim", f.grid().dim()},
                          {"points_per_axis", f.grid().points_per_axis()},
                          {"box_length", f.grid().box_length()},
                          {"components", f.components()},
                          {"name", name},
                          {"time", time}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(f.raw().data()),
              static_cast<std::streamsize>(f.raw().size() * sizeof(double)));
    if (!out) throw Error("write failed: " + path.string());
}

FieldSnapshot read_field_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("missing snapshot header: " + path.string());
    nlohmann::json header = nlohmann::json::parse(line);
    Grid grid(header.at("dim").get<int>(), header.at("points_per_axis").get<int>(),
              header.at("box_length").get<double>());
    FieldSnapshot snap{RealField(grid, header.at("components").get<int>()),
                       header.at("name").get<std::string>(), header.at("time").get<double>()};
    in.read(reinterpret_cast<char*>(snap.field.raw().data()),
            static_cast<std::streamsize>(snap.field.raw().size() * sizeof(double)));
    if (!in) throw Error("truncated snapshot payload: " + path.string());
    return snap;
}

}  // namespace eplab
