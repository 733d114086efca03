#include "gaborlat/io.hpp"

#include <json.hpp>
#include <zlib.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace gaborlat {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Lattice lattice_from_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("lattice JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("basis")) {
        throw ParseError("lattice JSON: need object with 'dim' and 'basis'");
    }
    const int dim = j.at("dim").get<int>();
    if (dim <= 0 || dim % 2 != 0) {
        throw ParseError("lattice JSON: 'dim' must be a positive even integer");
    }
    const auto& b = j.at("basis");
    if (!b.is_array() || static_cast<int>(b.size()) != dim * dim) {
        throw ParseError("lattice JSON: 'basis' must hold dim*dim numbers");
    }
    Eigen::MatrixXd basis(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const auto& cell = b.at(static_cast<std::size_t>(r) * dim + c);
            if (!cell.is_number()) throw ParseError("lattice JSON: non-numeric basis entry");
            const double v = cell.get<double>();
            if (!std::isfinite(v)) throw ParseError("lattice JSON: non-finite basis entry");
            basis(r, c) = v; // row-major input
        }
    }
    const std::string name = j.value("name", std::string{});
    return Lattice(basis, name);
}

void lattice_to_json(const Lattice& L, const std::string& path) {
    json j;
    j["dim"] = L.dim();
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(L.dim()) * L.dim());
    for (int r = 0; r < L.dim(); ++r) {
        for (int c = 0; c < L.dim(); ++c) flat.push_back(L.basis()(r, c));
    }
    j["basis"] = flat;
    j["name"] = L.name();
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

ThetaSeries theta_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("theta CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "norm2,count") throw ParseError("theta CSV: header must be 'norm2,count'");
    ThetaSeries t;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("theta CSV: missing comma");
        try {
            const double norm2 = std::stod(line.substr(0, comma));
            const std::uint64_t count = std::stoull(line.substr(comma + 1));
            if (!std::isfinite(norm2) || norm2 < 0.0) {
                throw ParseError("theta CSV: invalid norm2");
            }
            t.entries.emplace_back(norm2, count);
        } catch (const std::invalid_argument&) {
            throw ParseError("theta CSV: non-numeric row '" + line + "'");
        } catch (const std::out_of_range&) {
            throw ParseError("theta CSV: value out of range in '" + line + "'");
        }
    }
    t.validate();
    return t;
}

void theta_to_csv(const ThetaSeries& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << "norm2,count\n";
    for (const auto& [norm2, count] : t.entries) {
        out << csv_num(norm2) << "," << count << "\n";
    }
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << header << "\n";
    for (const auto& r : rows) out << r << "\n";
}

std::string csv_num(double v) {
    std::ostringstream ss;
    ss.precision(std::numeric_limits<double>::max_digits10);
    ss << v;
    return ss.str();
}

namespace {

void put_be32(std::string& s, std::uint32_t v) {
    s.push_back(static_cast<char>((v >> 24) & 0xff));
    s.push_back(static_cast<char>((v >> 16) & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>(v & 0xff));
}

void put_chunk(std::ofstream& out, const char type[4], const std::string& data) {
    std::string buf;
    put_be32(buf, static_cast<std::uint32_t>(data.size()));
    buf.append(type, 4);
    buf += data;
    const auto crc_start = reinterpret_cast<const Bytef*>(buf.data() + 4);
    const uLong crc = crc32(0L, crc_start, static_cast<uInt>(buf.size() - 4));
    put_be32(buf, static_cast<std::uint32_t>(crc));
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

/// Diverging blue-white-red map on [0, 1].
void colormap(double u, std::uint8_t rgb[3]) {
    u = std::min(1.0, std::max(0.0, u));
    const double r = u < 0.5 ? 2.0 * u : 1.0;
    const double b = u < 0.5 ? 1.0 : 2.0 * (1.0 - u);
    const double g = u < 0.5 ? 2.0 * u : 2.0 * (1.0 - u);
    rgb[0] = static_cast<std::uint8_t>(std::lround(255.0 * r));
    rgb[1] = static_cast<std::uint8_t>(std::lround(255.0 * g));
    rgb[2] = static_cast<std::uint8_t>(std::lround(255.0 * b));
}

} // namespace

void write_heatmap_png(const std::string& path, const std::vector<double>& values,
                       int width, int height, double vmin, double vmax) {
    if (width <= 0 || height <= 0 ||
        values.size() != static_cast<std::size_t>(width) * height) {
        throw DomainError("write_heatmap_png: size mismatch");
    }
    const double span = (vmax > vmin) ? vmax - vmin : 1.0;

    // Raw image: one filter byte (0) per scanline, then RGB triples.
    std::string raw;
    raw.reserve(static_cast<std::size_t>(height) * (1 + 3 * width));
    for (int y = 0; y < height; ++y) {
        raw.push_back('\0');
        for (int x = 0; x < width; ++x) {
            const double v = values[static_cast<std::size_t>(y) * width + x];
            std::uint8_t rgb[3];
            if (std::isfinite(v)) {
                colormap((v - vmin) / span, rgb);
            } else {
                rgb[0] = rgb[1] = rgb[2] = 64; // flagged cells in grey
            }
            raw.push_back(static_cast<char>(rgb[0]));
            raw.push_back(static_cast<char>(rgb[1]));
            raw.push_back(static_cast<char>(rgb[2]));
        }
    }

    uLongf comp_len = compressBound(static_cast<uLong>(raw.size()));
    std::string comp(comp_len, '\0');
    if (compress(reinterpret_cast<Bytef*>(comp.data()), &comp_len,
                 reinterpret_cast<const Bytef*>(raw.data()),
                 static_cast<uLong>(raw.size())) != Z_OK) {
        throw NumericError("write_heatmap_png: deflate failed");
    }
    comp.resize(comp_len);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    out.write(reinterpret_cast<const char*>(sig), 8);

    std::string ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(width));
    put_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // color type: truecolor
    ihdr.push_back(0);  // compression
    ihdr.push_back(0);  // filter
    ihdr.push_back(0);  // interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", comp);
    put_chunk(out, "IEND", "");
}

} // namespace gaborlat
