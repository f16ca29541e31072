#include "tensorrank/io.hpp"

#include "tensorrank/errors.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tensorrank::io {

namespace {

constexpr std::string_view kMagic = "TNS1";

template <typename T>
void put_le(std::string& out, T value) {
    auto bits = std::bit_cast<std::uint64_t>(value);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

std::uint64_t get_le(std::string_view bytes, std::size_t& pos) {
    if (pos + 8 > bytes.size()) throw FormatError("truncated binary tensor");
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + b])) << (8 * b);
    pos += 8;
    return v;
}

// Splits text into whitespace-separated tokens, skipping '#' comment lines.
std::vector<std::string_view> tokenize(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;
        std::size_t i = first;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) tokens.push_back(line.substr(i, j - i));
            i = j;
        }
    }
    return tokens;
}

template <typename T>
T parse_token(std::string_view tok, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw FormatError(std::string("cannot parse ") + what + " '" + std::string(tok) + "'");
    return value;
}

}  // namespace

std::string to_text(const DenseTensor& x) {
    std::string out = std::to_string(x.order()) + "\n";
    for (std::size_t l = 0; l < x.order(); ++l) {
        if (l) out += ' ';
        out += std::to_string(x.shape()[l]);
    }
    out += '\n';
    char buf[64];
    const std::size_t last = x.shape().back();
    std::size_t col = 0;
    for (double v : x.values()) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        if (ec != std::errc{}) throw FormatError("cannot format value");
        if (col) out += ' ';
        out.append(buf, ptr);
        if (++col == last) {
            out += '\n';
            col = 0;
        }
    }
    return out;
}

DenseTensor from_text(std::string_view text) {
    const auto tokens = tokenize(text);
    if (tokens.empty()) throw FormatError("empty tensor file");
    const auto order = parse_token<std::size_t>(tokens[0], "order");
    if (order < 1) throw FormatError("tensor order must be >= 1");
    if (tokens.size() < 1 + order) throw FormatError("missing shape entries");
    Shape shape(order);
    for (std::size_t l = 0; l < order; ++l) shape[l] = parse_token<std::size_t>(tokens[1 + l], "shape entry");
    std::size_t expected = product(shape);
    if (tokens.size() != 1 + order + expected)
        throw FormatError("expected " + std::to_string(expected) + " values, found " +
                          std::to_string(tokens.size() - 1 - order));
    std::vector<double> values(expected);
    for (std::size_t i = 0; i < expected; ++i) values[i] = parse_token<double>(tokens[1 + order + i], "value");
    try {
        return DenseTensor(std::move(shape), std::move(values));
    } catch (const ArgumentError& e) {
        throw FormatError(e.what());
    }
}

std::string to_binary(const DenseTensor& x) {
    std::string out(kMagic);
    out.reserve(4 + 8 * (1 + x.order() + x.size()));
    put_le(out, static_cast<std::uint64_t>(x.order()));
    for (auto n : x.shape()) put_le(out, static_cast<std::uint64_t>(n));
    for (double v : x.values()) put_le(out, v);
    return out;
}

DenseTensor from_binary(std::string_view bytes) {
    if (bytes.substr(0, 4) != kMagic) throw FormatError("missing TNS1 magic");
    std::size_t pos = 4;
    const auto order = get_le(bytes, pos);
    if (order < 1 || order > 64) throw FormatError("implausible tensor order");
    Shape shape(order);
    for (auto& n : shape) n = get_le(bytes, pos);
    for (auto n : shape)
        if (n == 0) throw FormatError("zero shape entry");
    const std::size_t count = product(shape);
    if ((bytes.size() - pos) / 8 < count || bytes.size() - pos != 8 * count)
        throw FormatError("binary tensor payload size mismatch");
    std::vector<double> values(count);
    for (auto& v : values) v = std::bit_cast<double>(get_le(bytes, pos));
    try {
        return DenseTensor(std::move(shape), std::move(values));
    } catch (const ArgumentError& e) {
        throw FormatError(e.what());
    }
}

void write_tensor(const std::filesystem::path& path, const DenseTensor& x, Encoding encoding) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    const std::string payload = encoding == Encoding::binary ? to_binary(x) : to_text(x);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw FormatError("write failed for " + path.string());
}

DenseTensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    if (data.compare(0, kMagic.size(), kMagic) == 0) return from_binary(data);
    return from_text(data);
}

}  // namespace tensorrank::io
