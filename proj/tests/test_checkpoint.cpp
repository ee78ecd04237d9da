#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "burgers/checkpoint.hpp"
#include "burgers/errors.hpp"

using namespace burgers;

namespace {

Checkpoint example() {
  Checkpoint c;
  c.scheme = Scheme::linearized;
  c.grid_points = 64;
  c.member_id = 3;
  c.seed = 0x0123456789abcdefull;
  c.step_index = 1234567;
  c.t = 0.75;
  c.nu = 1e-2;
  c.payload = {1.0, -2.5, 0.0, 1e-300};
  return c;
}

std::string bytes(const Checkpoint& c) {
  std::ostringstream os(std::ios::binary);
  write_checkpoint(os, c);
  return os.str();
}

Checkpoint parse(const std::string& s) {
  std::istringstream is(s, std::ios::binary);
  return read_checkpoint(is);
}

}  // namespace

TEST(Checkpoint, LayoutSize) { EXPECT_EQ(bytes(example()).size(), 56u + 8 * 4 + 8); }

TEST(Checkpoint, RoundTrip) {
  EXPECT_EQ(parse(bytes(example())), example());
  const std::string s = bytes(example());
  EXPECT_EQ(s.substr(0, 4), "SBRG");
}

TEST(Checkpoint, CorruptionIsDetected) {
  const std::string good = bytes(example());
  for (std::size_t i : {std::size_t{0}, std::size_t{5}, std::size_t{41}, good.size() - 20}) {
    std::string bad = good;
    bad[i] ^= 0x10;
    EXPECT_THROW(parse(bad), IoError) << "byte " << i;
  }
  EXPECT_THROW(parse(good.substr(0, good.size() - 3)), IoError);
  EXPECT_THROW(parse(""), IoError);
}

TEST(Checkpoint, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "burgers_checkpoint_test.bin";
  save_checkpoint(path, example());
  EXPECT_EQ(load_checkpoint(path), example());
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), IoError);
}
