#include "ringio/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ringio {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::filesystem::path& path, const Table& table)
{
    auto out = open_for_write(path);
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) throw std::invalid_argument("write_csv: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
}

nlohmann::json table_to_json(const Table& table)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) rows.push_back(r);
    return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

nlohmann::json axis_to_json(const UniformAxis& axis)
{
    return {{"start", axis.start}, {"step", axis.step}, {"count", axis.count}};
}

UniformAxis axis_from_json(const nlohmann::json& j)
{
    return {j.at("start").get<double>(), j.at("step").get<double>(), j.at("count").get<std::size_t>()};
}

nlohmann::json train_to_json(const DeltaTrain& train)
{
    nlohmann::json weights = nlohmann::json::array();
    for (const auto& [k, c] : train.weights()) weights.push_back(nlohmann::json::array({k, c}));
    return {{"T", train.period()}, {"eps", train.eps()}, {"weights", std::move(weights)}, {"tail_bound", train.tail_bound()}};
}

DeltaTrain train_from_json(const nlohmann::json& j)
{
    std::map<DeltaTrain::Offset, double> w;
    for (const auto& pair : j.at("weights")) {
        if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("delta train weights must be [k, c] pairs");
        w[pair[0].get<DeltaTrain::Offset>()] = pair[1].get<double>();
    }
    return {j.at("T").get<double>(), j.at("eps").get<double>(), w, j.at("tail_bound").get<double>()};
}

void write_matrix_csv(const std::filesystem::path& path, const std::string& row_label, const UniformAxis& row_axis,
                      const UniformAxis& col_axis, const Eigen::MatrixXd& values)
{
    if (values.rows() != static_cast<Eigen::Index>(row_axis.count) ||
        values.cols() != static_cast<Eigen::Index>(col_axis.count))
        throw std::invalid_argument("write_matrix_csv: matrix does not match axes");
    auto out = open_for_write(path);
    out << row_label;
    for (std::size_t c = 0; c < col_axis.count; ++c) out << ',' << format_double(col_axis.at(c));
    out << '\n';
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        out << format_double(row_axis.at(static_cast<std::size_t>(r)));
        for (Eigen::Index c = 0; c < values.cols(); ++c) out << ',' << format_double(values(r, c));
        out << '\n';
    }
}

nlohmann::json commutator_map_metadata(const CommutatorMap& map)
{
    return {{"rows", "t"},
            {"columns", "z"},
            {"t_axis", axis_to_json(map.t_axis)},
            {"z_axis", axis_to_json(map.z_axis)},
            {"zprime", map.zprime},
            {"tprime", map.tprime},
            {"rho", map.rho},
            {"broadening", map.broadening}};
}

void write_commutator_map(const std::filesystem::path& csv_path, const CommutatorMap& map)
{
    write_matrix_csv(csv_path, "t", map.t_axis, map.z_axis, map.values);
    auto sidecar = csv_path;
    sidecar.replace_extension(".json");
    write_json_file(sidecar, commutator_map_metadata(map));
}

void write_joint_amplitude(const std::filesystem::path& directory, const std::string& stem,
                           const JointAmplitudeGrid& grid, const nlohmann::json& extra)
{
    const Eigen::MatrixXd mag = grid.values().cwiseAbs();
    const Eigen::MatrixXd phase = grid.values().unaryExpr([](const cplx& z) { return std::arg(z); }).real();
    write_matrix_csv(directory / (stem + "_magnitude.csv"), "t1", grid.t1_axis(), grid.t2_axis(), mag);
    write_matrix_csv(directory / (stem + "_phase.csv"), "t1", grid.t1_axis(), grid.t2_axis(), phase);
    nlohmann::json meta = {{"rows", "t1"}, {"columns", "t2"}, {"t1_axis", axis_to_json(grid.t1_axis())},
                           {"t2_axis", axis_to_json(grid.t2_axis())}};
    if (extra.is_object())
        for (const auto& [key, value] : extra.items()) meta[key] = value;
    write_json_file(directory / (stem + ".json"), meta);
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j)
{
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
}

} // namespace ringio
