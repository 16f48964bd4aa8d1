#include <cstdint>
#include <fstream>
#include <vector>

#include "cure/common/error.hpp"
#include "cure/io/loaders.hpp"

namespace cure::io {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::vector<unsigned char> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("idx_missing_file", "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& buf,
                        std::size_t offset, const std::string& path) {
  if (offset + 4 > buf.size())
    throw FormatError("idx_truncated", path + ": truncated header");
  return (static_cast<std::uint32_t>(buf[offset]) << 24) |
         (static_cast<std::uint32_t>(buf[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(buf[offset + 2]) << 8) |
         static_cast<std::uint32_t>(buf[offset + 3]);
}

}  // namespace

model::Dataset load_idx(const std::string& images_path,
                        const std::string& labels_path) {
  const auto img = read_all(images_path);
  const auto lbl = read_all(labels_path);

  if (read_be32(img, 0, images_path) != kImagesMagic)
    throw FormatError("idx_bad_magic",
                      images_path + ": expected image magic 0x00000803");
  if (read_be32(lbl, 0, labels_path) != kLabelsMagic)
    throw FormatError("idx_bad_magic",
                      labels_path + ": expected label magic 0x00000801");

  const std::uint32_t n_images = read_be32(img, 4, images_path);
  const std::uint32_t rows = read_be32(img, 8, images_path);
  const std::uint32_t cols = read_be32(img, 12, images_path);
  const std::uint32_t n_labels = read_be32(lbl, 4, labels_path);

  if (n_images != n_labels)
    throw FormatError("idx_count_mismatch",
                      "images " + std::to_string(n_images) + " vs labels " +
                          std::to_string(n_labels));

  const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
  if (img.size() != 16 + static_cast<std::size_t>(n_images) * pixels)
    throw FormatError("idx_truncated", images_path + ": payload size mismatch");
  if (lbl.size() != 8 + static_cast<std::size_t>(n_labels))
    throw FormatError("idx_truncated", labels_path + ": payload size mismatch");

  model::Dataset out;
  out.features = linalg::Matrix(n_images, pixels);
  out.labels.resize(n_images);
  int max_label = 0;
  for (std::uint32_t i = 0; i < n_images; ++i) {
    for (std::size_t j = 0; j < pixels; ++j)
      out.features(i, j) =
          static_cast<double>(img[16 + static_cast<std::size_t>(i) * pixels + j]) /
          255.0;
    out.labels[i] = static_cast<int>(lbl[8 + i]);
    max_label = std::max(max_label, out.labels[i]);
  }
  out.class_count = static_cast<std::size_t>(max_label) + 1;
  if (out.class_count < 2) out.class_count = 2;
  out.name = "idx";
  out.validate();
  return out;
}

}  // namespace cure::io
