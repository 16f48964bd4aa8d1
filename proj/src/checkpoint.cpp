#include "cure/io/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "cure/common/error.hpp"

namespace cure::io {

namespace {

constexpr char kMagic[8] = {'C', 'U', 'R', 'E', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(buf, bits);
}

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;

  void need(std::size_t n) {
    if (pos + n > buf.size())
      throw FormatError("checkpoint_truncated", "unexpected end of checkpoint");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos++])) << (8 * i);
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
};

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::string buf;
  buf.append(kMagic, 8);
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(ckpt.spec.kind));
  put_u32(buf, static_cast<std::uint32_t>(ckpt.spec.activation));
  put_u64(buf, ckpt.spec.input_dim);
  put_u64(buf, ckpt.spec.class_count);
  put_u64(buf, ckpt.spec.hidden_units);
  put_f64(buf, ckpt.spec.l2_coeff);
  put_u64(buf, ckpt.params.size());
  for (double v : ckpt.params.values) put_f64(buf, v);
  put_u64(buf, ckpt.seed);
  put_u64(buf, ckpt.epochs);
  put_f64(buf, ckpt.final_loss);
  put_u64(buf, static_cast<std::uint64_t>(ckpt.created_at));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("checkpoint_write_failed", "cannot write " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Checkpoint load_checkpoint(const std::string& path,
                           const std::optional<model::ModelSpec>& expected_spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("checkpoint_missing_file", "cannot open " + path);
  const std::string buf{std::istreambuf_iterator<char>(in),
                        std::istreambuf_iterator<char>()};
  Reader r{buf};
  r.need(8);
  if (std::memcmp(buf.data(), kMagic, 8) != 0)
    throw FormatError("checkpoint_bad_magic", path + ": not a checkpoint file");
  r.pos = 8;
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError("checkpoint_version",
                      path + ": unsupported version " + std::to_string(version));

  Checkpoint ckpt;
  ckpt.format_version = version;
  const std::uint32_t kind = r.u32();
  if (kind > 2) throw FormatError("checkpoint_corrupt", "bad model kind");
  ckpt.spec.kind = static_cast<model::ModelKind>(kind);
  const std::uint32_t act = r.u32();
  if (act > 1) throw FormatError("checkpoint_corrupt", "bad activation");
  ckpt.spec.activation = static_cast<model::Activation>(act);
  ckpt.spec.input_dim = r.u64();
  ckpt.spec.class_count = r.u64();
  ckpt.spec.hidden_units = r.u64();
  ckpt.spec.l2_coeff = r.f64();

  const std::uint64_t d = r.u64();
  if (d != ckpt.spec.param_count())
    throw FormatError("checkpoint_corrupt",
                      "parameter count does not match spec");
  ckpt.params.values.resize(d);
  for (std::uint64_t i = 0; i < d; ++i) ckpt.params.values[i] = r.f64();
  ckpt.seed = r.u64();
  ckpt.epochs = r.u64();
  ckpt.final_loss = r.f64();
  ckpt.created_at = static_cast<std::int64_t>(r.u64());

  if (expected_spec && !(ckpt.spec == *expected_spec))
    throw FormatError("checkpoint_spec_mismatch",
                      path + ": checkpoint spec differs from requested spec");
  return ckpt;
}

}  // namespace cure::io
