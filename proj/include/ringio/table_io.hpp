// table_io.hpp - CSV/JSON dataset writers shared by the CLI and validation

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "ringio/axis.hpp"
#include "ringio/commutator_lab.hpp"
#include "ringio/echo_kernels.hpp"
#include "ringio/two_photon.hpp"

namespace ringio {

// 17 significant digits, shortest form that round-trips.
std::string format_double(double x);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const Table& table);
// {"columns": [...], "rows": [[...], ...]}
nlohmann::json table_to_json(const Table& table);

nlohmann::json axis_to_json(const UniformAxis& axis);
UniformAxis axis_from_json(const nlohmann::json& j);

// {"T": ..., "eps": ..., "weights": [[k, c_k], ...], "tail_bound": ...}
nlohmann::json train_to_json(const DeltaTrain& train);
DeltaTrain train_from_json(const nlohmann::json& j);

// One CSV row per row of `values`, first column the row axis value, header
// naming the column axis values.
void write_matrix_csv(const std::filesystem::path& path, const std::string& row_label,
                      const UniformAxis& row_axis, const UniformAxis& col_axis,
                      const Eigen::MatrixXd& values);

// CSV (one row per t) plus <stem>.json sidecar with axis metadata.
void write_commutator_map(const std::filesystem::path& csv_path, const CommutatorMap& map);
nlohmann::json commutator_map_metadata(const CommutatorMap& map);

// <stem>_magnitude.csv, <stem>_phase.csv and <stem>.json.
void write_joint_amplitude(const std::filesystem::path& directory, const std::string& stem,
                           const JointAmplitudeGrid& grid, const nlohmann::json& extra = {});

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

} // namespace ringio
