#include "burgers/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "burgers/errors.hpp"

namespace burgers {

static_assert(std::endian::native == std::endian::little,
              "checkpoint encoding assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'B', 'R', 'G'};

class Writer {
 public:
  template <class T>
  void put(const T& v) {
    const auto* p = reinterpret_cast<const unsigned char*>(&v);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }
  const std::vector<unsigned char>& bytes() const { return bytes_; }

 private:
  std::vector<unsigned char> bytes_;
};

class Reader {
 public:
  explicit Reader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}
  template <class T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw IoError("truncated checkpoint");
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::size_t position() const { return pos_; }
  const std::vector<unsigned char>& bytes() const { return bytes_; }

 private:
  std::vector<unsigned char> bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t fnv1a(const unsigned char* data, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

void write_checkpoint(std::ostream& os, const Checkpoint& c) {
  Writer w;
  for (char ch : kMagic) w.put(ch);
  w.put(Checkpoint::kVersion);
  w.put(static_cast<std::uint32_t>(c.scheme));
  w.put(c.grid_points);
  const std::uint32_t length = c.scheme == Scheme::inviscid
                                   ? static_cast<std::uint32_t>(c.payload.size())
                                   : static_cast<std::uint32_t>(c.payload.size() / 2);
  w.put(length);
  w.put(c.member_id);
  w.put(c.seed);
  w.put(c.step_index);
  w.put(c.t);
  w.put(c.nu);
  for (double v : c.payload) w.put(v);
  const auto& b = w.bytes();
  const std::uint64_t hash = fnv1a(b.data(), b.size());
  os.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  os.write(reinterpret_cast<const char*>(&hash), sizeof hash);
  if (!os) throw IoError("failed writing checkpoint");
}

Checkpoint read_checkpoint(std::istream& is) {
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  Reader r(std::move(bytes));
  for (char ch : kMagic)
    if (r.get<char>() != ch) throw IoError("not a checkpoint (bad magic)");
  const auto version = r.get<std::uint32_t>();
  if (version != Checkpoint::kVersion)
    throw IoError("unsupported checkpoint version " + std::to_string(version));
  Checkpoint c;
  const auto tag = r.get<std::uint32_t>();
  if (tag < 1 || tag > 3) throw IoError("unknown scheme tag in checkpoint");
  c.scheme = static_cast<Scheme>(tag);
  c.grid_points = r.get<std::uint32_t>();
  const auto length = r.get<std::uint32_t>();
  c.member_id = r.get<std::uint32_t>();
  c.seed = r.get<std::uint64_t>();
  c.step_index = r.get<std::uint64_t>();
  c.t = r.get<double>();
  c.nu = r.get<double>();
  const std::size_t count = c.scheme == Scheme::inviscid ? length : 2 * std::size_t{length};
  c.payload.resize(count);
  for (auto& v : c.payload) v = r.get<double>();
  const std::size_t body = r.position();
  const auto stored = r.get<std::uint64_t>();
  if (stored != fnv1a(r.bytes().data(), body)) throw IoError("checkpoint hash mismatch");
  return c;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_checkpoint(os, c);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return read_checkpoint(is);
}

}  // namespace burgers
