#pragma once

#include "tensorrank/tensor.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace tensorrank::io {

/// Text ".tns": order, shape line, then row-major values. '#' starts a
/// comment line. Values are written in shortest round-trip form.
[[nodiscard]] std::string to_text(const DenseTensor& x);
[[nodiscard]] DenseTensor from_text(std::string_view text);

/// Binary ".tns": "TNS1", u64 order, u64 shape[order], f64 values; all
/// little-endian.
[[nodiscard]] std::string to_binary(const DenseTensor& x);
[[nodiscard]] DenseTensor from_binary(std::string_view bytes);

enum class Encoding { text, binary };

void write_tensor(const std::filesystem::path& path, const DenseTensor& x,
                  Encoding encoding = Encoding::text);

/// Detects the binary variant by its magic bytes.
[[nodiscard]] DenseTensor read_tensor(const std::filesystem::path& path);

}  // namespace tensorrank::io
