#pragma once

#include <filesystem>

#include "ctxbench/dataset.hpp"

namespace ctxbench {

// Dataset CSV: header "f0,...,f{n-1},label[,user]"; features printed so they
// round-trip exactly. Loading accepts a "label" column anywhere in the
// header; every other column except an optional "user" is a feature.
void save_csv(const Dataset& d, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path);

}  // namespace ctxbench
