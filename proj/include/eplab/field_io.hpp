// Copyright 2026 The eplab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "eplab/field.hpp"

namespace eplab {

/// Snapshot file: one JSON header line (dim, points_per_axis, box_length,
/// components, name, time) followed by raw little-endian float64 samples in
/// row-major order, one component after another.
void write_field_snapshot(const std::filesystem::path& path, const RealField& f,
                          const std::string& name, double time);

struct FieldSnapshot {
    RealField field;
    std::string name;
    double time;
};

FieldSnapshot read_field_snapshot(const std::filesystem::path& path);

}  // namespace eplab
