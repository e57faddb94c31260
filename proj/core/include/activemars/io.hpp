#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"

namespace activemars {

using Json = nlohmann::json;

// Model files --------------------------------------------------------------

Json model_to_json(const MarsModel& model);
/// Throws InputError on malformed documents, unknown format majors or any
/// model invariant violation (e.g. "knot out of [0,1]").
MarsModel model_from_json(const Json& doc);

void write_model(const std::filesystem::path& path, const MarsModel& model,
                 const Json& manifest = nullptr);
MarsModel read_model(const std::filesystem::path& path);

// Prior files --------------------------------------------------------------

Json prior_to_json(const PriorSpec& prior);
PriorSpec prior_from_json(const Json& doc);

void write_prior(const std::filesystem::path& path, const PriorSpec& prior,
                 const Json& manifest = nullptr);
PriorSpec read_prior(const std::filesystem::path& path);

// Datasets -----------------------------------------------------------------

enum class HeaderMode { automatic, present, absent };

/// CSV with the inputs in the leading columns and the response last. In
/// automatic mode the first row is a header iff any field fails to parse as a
/// number.
DatasetSpec read_dataset_csv(const std::filesystem::path& path,
                             HeaderMode header = HeaderMode::automatic);
/// Numeric matrix CSV (optional header, same detection rule).
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path,
                                HeaderMode header = HeaderMode::automatic);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header = {});

// Helpers shared by the format readers -------------------------------------

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);
/// Throws InputError unless doc["version"] has major kFormatVersion.
void check_version(const Json& doc);
/// Accepts numbers and the strings "inf" / "-inf".
double json_to_real(const Json& v);
Json real_to_json(double v);

}  // namespace activemars
