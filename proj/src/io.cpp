// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rhlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key");
        map[section.empty() ? key : section + "." + key] = value;
    }
    return map;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

double config_double(const ConfigMap& map, const std::string& key, double fallback) {
    auto it = map.find(key);
    if (it == map.end()) return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: " +
                                    it->second);
    }
}

int config_int(const ConfigMap& map, const std::string& key, int fallback) {
    auto it = map.find(key);
    if (it == map.end()) return fallback;
    try {
        std::size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing text");
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: " +
                                    it->second);
    }
}

bool config_bool(const ConfigMap& map, const std::string& key, bool fallback) {
    auto it = map.find(key);
    if (it == map.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config key '" + key + "': not a boolean: " + v);
}

std::string config_string(const ConfigMap& map, const std::string& key,
                          const std::string& fallback) {
    auto it = map.find(key);
    return it == map.end() ? fallback : it->second;
}

std::string format_config(const ConfigSections& sections) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [section, pairs] : sections) {
        if (!first) out << "\n";
        first = false;
        out << "[" << section << "]\n";
        for (const auto& [key, value] : pairs) out << key << " = " << value << "\n";
    }
    return out.str();
}

std::string format_double(double v) {
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_doubles_le(std::ostream& out, const double* values, std::size_t count) {
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(values),
                  static_cast<std::streamsize>(count * sizeof(double)));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t bits;
            std::memcpy(&bits, &values[i], sizeof bits);
            char b[8];
            for (int k = 0; k < 8; ++k) b[k] = static_cast<char>(bits >> (8 * k));
            out.write(b, 8);
        }
    }
}

void read_doubles_le(std::istream& in, double* values, std::size_t count) {
    if constexpr (std::endian::native == std::endian::little) {
        in.read(reinterpret_cast<char*>(values),
                static_cast<std::streamsize>(count * sizeof(double)));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            char b[8];
            in.read(b, 8);
            std::uint64_t bits = 0;
            for (int k = 0; k < 8; ++k)
                bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[k]))
                        << (8 * k);
            std::memcpy(&values[i], &bits, sizeof bits);
        }
    }
    if (!in) throw std::runtime_error("snapshot: truncated value block");
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
    out << "rhlab-snapshot 1\n";
    out << "scenario " << snap.scenario << "\n";
    out << "time " << format_double(snap.time) << "\n";
    out << "gamma " << format_double(snap.gamma) << "\n";
    out << "c " << format_double(snap.c) << "\n";
    out << "grid " << snap.grid.dim << " " << snap.grid.nx << " " << snap.grid.ny << " "
        << snap.grid.nz;
    for (int a = 0; a < 3; ++a) out << " " << format_double(snap.grid.origin[a]);
    for (int a = 0; a < 3; ++a) out << " " << format_double(snap.grid.h[a]);
    out << "\n";
    for (const auto& f : snap.fields)
        out << "field " << f.name << " " << f.values.size() << "\n";
    out << "end\n";
    for (const auto& f : snap.fields) write_doubles_le(out, f.values.data(), f.values.size());
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    Snapshot snap;
    std::string line;
    if (!std::getline(in, line) || line != "rhlab-snapshot 1")
        throw std::runtime_error("snapshot: unrecognized header in " + path);
    std::vector<std::pair<std::string, std::size_t>> layout;
    while (std::getline(in, line)) {
        if (line == "end") break;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "scenario") {
            ls >> std::ws;
            std::getline(ls, snap.scenario);
        } else if (tag == "time") {
            ls >> snap.time;
        } else if (tag == "gamma") {
            ls >> snap.gamma;
        } else if (tag == "c") {
            ls >> snap.c;
        } else if (tag == "grid") {
            ls >> snap.grid.dim >> snap.grid.nx >> snap.grid.ny >> snap.grid.nz;
            for (int a = 0; a < 3; ++a) ls >> snap.grid.origin[a];
            for (int a = 0; a < 3; ++a) ls >> snap.grid.h[a];
        } else if (tag == "field") {
            std::string name;
            std::size_t count = 0;
            ls >> name >> count;
            layout.emplace_back(name, count);
        } else {
            throw std::runtime_error("snapshot: unknown header line: " + line);
        }
        if (ls.fail()) throw std::runtime_error("snapshot: malformed header line: " + line);
    }
    for (const auto& [name, count] : layout) {
        SnapshotField f;
        f.name = name;
        f.values.resize(count);
        read_doubles_le(in, f.values.data(), count);
        snap.fields.push_back(std::move(f));
    }
    return snap;
}

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_escape(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ",";
        out << csv_escape(row[i]);
    }
    out << "\r\n";
}

}  // namespace

void write_csv(const std::string& path, const CsvTable& table) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw std::invalid_argument("csv row width differs from header width");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open csv for writing: " + path);
    write_row(out, table.columns);
    for (const auto& row : table.rows) write_row(out, row);
    if (!out) throw std::runtime_error("csv write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open csv: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CsvTable table;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool any = false;
    auto end_cell = [&] {
        row.push_back(cell);
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        if (!any) {
            table.columns = row;
            any = true;
        } else {
            table.rows.push_back(row);
        }
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            end_cell();
        } else if (ch == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_row();
        } else if (ch == '\n') {
            end_row();
        } else {
            cell += ch;
        }
    }
    if (!cell.empty() || !row.empty()) end_row();
    return table;
}

std::size_t csv_column(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name) return i;
    throw std::invalid_argument("csv has no column named '" + name + "'");
}

namespace {

constexpr double kCanvasW = 860.0;
constexpr double kCanvasH = 520.0;
constexpr double kMarginL = 72.0;
constexpr double kMarginR = 24.0;
constexpr double kMarginT = 44.0;
constexpr double kMarginB = 56.0;

const char* kPalette[] = {"#1f6feb", "#d1242f", "#1a7f37", "#9a6700", "#8250df"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

// Tick spacing of the form {1,2,5}*10^k giving five to ten intervals.
double nice_step(double range) {
    if (range <= 0.0) return 1.0;
    const double raw = range / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac <= 1.0) step = 1.0;
    else if (frac <= 2.0) step = 2.0;
    else if (frac <= 5.0) step = 5.0;
    else step = 10.0;
    return step * mag;
}

}  // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec) {
    bool has_points = false;
    for (const auto& s : spec.series)
        if (!s.points.empty()) has_points = true;
    if (!has_points) throw std::invalid_argument("svg plot: no data points");

    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& s : spec.series)
        for (const auto& p : s.points) {
            double y = p[1];
            if (spec.log_y) {
                if (y <= 0.0) continue;
                y = std::log10(y);
            }
            if (first) {
                xmin = xmax = p[0];
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, p[0]);
                xmax = std::max(xmax, p[0]);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    if (first) throw std::invalid_argument("svg plot: no plottable points");
    if (xmax - xmin <= 0.0) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax - ymin <= 0.0) {
        ymin -= 1.0;
        ymax += 1.0;
    }

    const double plot_w = kCanvasW - kMarginL - kMarginR;
    const double plot_h = kCanvasH - kMarginT - kMarginB;
    auto sx = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double y) {
        const double v = spec.log_y ? std::log10(y) : y;
        return kMarginT + plot_h - (v - ymin) / (ymax - ymin) * plot_h;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kCanvasW)
        << "\" height=\"" << num(kCanvasH) << "\" viewBox=\"0 0 " << num(kCanvasW) << " "
        << num(kCanvasH) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out << "<text x=\"" << num(kCanvasW / 2) << "\" y=\"24\" font-family=\"monospace\" "
        << "font-size=\"15\" text-anchor=\"middle\">" << xml_escape(spec.title)
        << "</text>\n";

    const double xstep = nice_step(xmax - xmin);
    const double ystep = nice_step(ymax - ymin);
    out << "<g font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">\n";
    for (double tx = std::ceil(xmin / xstep) * xstep; tx <= xmax + 1e-9 * xstep;
         tx += xstep) {
        const double px = sx(tx);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kMarginT) << "\" x2=\""
            << num(px) << "\" y2=\"" << num(kMarginT + plot_h)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << num(kMarginT + plot_h + 16)
            << "\" text-anchor=\"middle\">" << num(tx) << "</text>\n";
    }
    for (double ty = std::ceil(ymin / ystep) * ystep; ty <= ymax + 1e-9 * ystep;
         ty += ystep) {
        const double py = kMarginT + plot_h - (ty - ymin) / (ymax - ymin) * plot_h;
        out << "<line x1=\"" << num(kMarginL) << "\" y1=\"" << num(py) << "\" x2=\""
            << num(kMarginL + plot_w) << "\" y2=\"" << num(py)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << num(kMarginL - 6) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\">"
            << (spec.log_y ? "1e" + num(ty) : num(ty)) << "</text>\n";
    }
    out << "</g>\n";

    out << "<rect x=\"" << num(kMarginL) << "\" y=\"" << num(kMarginT) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(kMarginL + plot_w / 2) << "\" y=\""
        << num(kCanvasH - 14) << "\" font-family=\"monospace\" font-size=\"12\" "
        << "text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(kMarginT + plot_h / 2)
        << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 18 " << num(kMarginT + plot_h / 2) << ")\">"
        << xml_escape(spec.y_label) << "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        bool wrote = false;
        for (const auto& p : s.points) {
            if (spec.log_y && p[1] <= 0.0) continue;
            out << (wrote ? " " : "") << num(sx(p[0])) << "," << num(sy(p[1]));
            wrote = true;
        }
        out << "\"/>\n";
        out << "<text x=\"" << num(kMarginL + plot_w - 8) << "\" y=\""
            << num(kMarginT + 16 + 15 * static_cast<double>(si))
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\" "
            << "fill=\"" << color << "\">" << xml_escape(s.label) << "</text>\n";
    }

    for (const auto& m : spec.markers) {
        if (m.x < xmin || m.x > xmax) continue;
        const double px = sx(m.x);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kMarginT) << "\" x2=\""
            << num(px) << "\" y2=\"" << num(kMarginT + plot_h)
            << "\" stroke=\"#d1242f\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
        out << "<text x=\"" << num(px + 4) << "\" y=\"" << num(kMarginT + 12)
            << "\" font-family=\"monospace\" font-size=\"11\" fill=\"#d1242f\">"
            << xml_escape(m.label) << "</text>\n";
    }
    out << "</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open svg for writing: " + path);
    file << out.str();
    if (!file) throw std::runtime_error("svg write failed: " + path);
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
    std::uint64_t hash = 14695981039346656037ull;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
    }
    return hash;
}

void write_manifest(const std::string& dir, const std::vector<std::string>& names) {
    nlohmann::json files = nlohmann::json::object();
    for (const auto& name : names) {
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(dir + "/" + name)));
        files[name] = hex;
    }
    nlohmann::json j;
    j["algorithm"] = "fnv1a-64";
    j["files"] = files;
    std::ofstream out(dir + "/manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open manifest for writing in " + dir);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("manifest write failed in " + dir);
}

}  // namespace rhlab
