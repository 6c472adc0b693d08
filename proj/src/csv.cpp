#include "dmp/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "dmp/errors.hpp"

namespace dmp {

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    traj.validate();
    const int d = traj.dims();
    std::string out;
    out.reserve(static_cast<std::size_t>(traj.samples()) * (3 * d + 1) * 20);
    out += "t";
    for (int p = 1; p <= d; ++p) out += ",x" + std::to_string(p);
    for (int p = 1; p <= d; ++p) out += ",v" + std::to_string(p);
    for (int p = 1; p <= d; ++p) out += ",a" + std::to_string(p);
    out += "\n";
    for (int k = 0; k < traj.samples(); ++k) {
        out += format_double(traj.times[k]);
        for (int p = 0; p < d; ++p) out += "," + format_double(traj.positions(k, p));
        for (int p = 0; p < d; ++p) out += "," + format_double(traj.velocities(k, p));
        for (int p = 0; p < d; ++p) out += "," + format_double(traj.accelerations(k, p));
        out += "\n";
    }
    return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);
    file << trajectory_to_csv(traj);
    if (!file) throw IoError("write failed: " + path);
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(begin));
            return fields;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
}

double parse_field(const std::string& field, int line_no, int column) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ValidationError("CSV: malformed number at line " + std::to_string(line_no) +
                              ", column " + std::to_string(column) + ": '" + field + "'");
    }
    return value;
}

}  // namespace

Trajectory parse_trajectory_csv(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line)) throw ValidationError("CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split(line);
    if (header.size() < 4 || (header.size() - 1) % 3 != 0 || header[0] != "t") {
        throw ValidationError("CSV: header must be t,x1..xd,v1..vd,a1..ad");
    }
    const int d = static_cast<int>((header.size() - 1) / 3);
    for (int p = 0; p < d; ++p) {
        if (header[1 + p] != "x" + std::to_string(p + 1) ||
            header[1 + d + p] != "v" + std::to_string(p + 1) ||
            header[1 + 2 * d + p] != "a" + std::to_string(p + 1)) {
            throw ValidationError("CSV: header must be t,x1..xd,v1..vd,a1..ad");
        }
    }

    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line);
        if (fields.size() != header.size()) {
            throw ValidationError("CSV: line " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            row[c] = parse_field(fields[c], line_no, static_cast<int>(c + 1));
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw ValidationError("CSV: need at least two data rows");

    Trajectory traj;
    const int m = static_cast<int>(rows.size());
    traj.times.resize(m);
    traj.positions.resize(m, d);
    traj.velocities.resize(m, d);
    traj.accelerations.resize(m, d);
    for (int k = 0; k < m; ++k) {
        traj.times[k] = rows[k][0];
        for (int p = 0; p < d; ++p) {
            traj.positions(k, p) = rows[k][1 + p];
            traj.velocities(k, p) = rows[k][1 + d + p];
            traj.accelerations(k, p) = rows[k][1 + 2 * d + p];
        }
    }
    traj.validate();
    return traj;
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_trajectory_csv(buffer.str());
}

}  // namespace dmp
