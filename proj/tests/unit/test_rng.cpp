#include <doctest.h>

#include <cmath>
#include <vector>

#include "autosgd/rng.hpp"

using autosgd::RngStream;

TEST_CASE("replaying a stream reproduces it bit for bit") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids never collide positionally") {
  RngStream a(42, 1);
  RngStream b(42, 2);
  for (int i = 0; i < 10000; ++i) CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("child streams are deterministic and label-sensitive") {
  RngStream root(9, 0);
  RngStream c1 = root.child("grad-noise");
  RngStream c2 = root.child("grad-noise");
  RngStream c3 = root.child("eval-noise-1");
  CHECK(c1.stream_id() == c2.stream_id());
  CHECK(c1.stream_id() != c3.stream_id());
  CHECK(c1.next_u64() == c2.next_u64());
  CHECK(c1.next_u64() != c3.next_u64());
  // Drawing from the parent does not affect already-derived children.
  RngStream root2(9, 0);
  root2.next_u64();
  CHECK(root2.child("grad-noise").next_u64() == root.child("grad-noise").next_u64());
}

TEST_CASE("uniform and normal draws have sane moments") {
  RngStream rng(123, 0);
  double usum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    usum += u;
  }
  CHECK(usum / 100000 == doctest::Approx(0.5).epsilon(0.01));

  double nsum = 0.0, nsq = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double z = rng.next_normal();
    nsum += z;
    nsq += z * z;
  }
  CHECK(std::fabs(nsum / 100000) < 0.02);
  CHECK(nsq / 100000 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("index draws stay in range") {
  RngStream rng(5, 0);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 10000; ++i) counts[rng.next_index(10)] += 1;
  for (int c : counts) CHECK(c > 800);
}
