#pragma once

#include <filesystem>

#include "activemars/cmatrix.hpp"
#include "activemars/io.hpp"
#include "activemars/partition.hpp"
#include "activemars/subspace.hpp"

namespace activemars {

Json cmatrix_to_json(const CMatrix& c);
CMatrix cmatrix_from_json(const Json& doc);
void write_cmatrix(const std::filesystem::path& path, const CMatrix& c,
                   const Json& manifest = nullptr);
CMatrix read_cmatrix(const std::filesystem::path& path);

Json subspace_to_json(const ActiveSubspace& s);
ActiveSubspace subspace_from_json(const Json& doc);

Json partition_to_json(const BoxPartition& partition);
BoxPartition partition_from_json(const Json& doc);

Json constraints_to_json(const LinearConstraintSet& constraints);
LinearConstraintSet constraints_from_json(const Json& doc);
LinearConstraintSet read_constraints(const std::filesystem::path& path);

}  // namespace activemars
