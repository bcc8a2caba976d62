#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "oodn/class_file.hpp"
#include "oodn/exploiters.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace oodn;
using namespace oodn::testing;
namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oodn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run_cli(args, out_, err_);
  }
  std::string fx(const char* f) const { return fixture(f).string(); }
  std::string tmp(const char* f) const { return (dir_ / f).string(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, UnionWritesGoldenFile) {
  ASSERT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("vehicles.cls"), "--name", "Vehicles"}), 0)
      << err_.str();
  EXPECT_EQ(read_file(tmp("vehicles.cls")), read_file(golden("union_car_motorcycle.cls")));
  EXPECT_NE(out_.str().find("projections: 2"), std::string::npos) << out_.str();
}

TEST_F(Cli, DefaultResultNameComesFromOutput) {
  ASSERT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("Vehicles.cls")}), 0);
  EXPECT_EQ(load(tmp("Vehicles.cls")).name(), "Vehicles");
  ASSERT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("my-out.cls")}), 0);
  EXPECT_EQ(load(tmp("my-out.cls")).name(), "Union");
}

TEST_F(Cli, StatsFlag) {
  ASSERT_EQ(run({"--strategy", "naive", "--stats", "union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("v.cls")}), 0);
  EXPECT_NE(out_.str().find("tuples_considered=8"), std::string::npos) << out_.str();
  ASSERT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("v.cls"), "--strategy", "naive", "--stats"}), 0);
  EXPECT_NE(out_.str().find("tuples_considered=8"), std::string::npos) << out_.str();
  EXPECT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("v.cls"), "--strategy", "clever"}), 1);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"intersect", fx("car.cls"), fx("nooverlap.cls"), "-o", tmp("x.cls")}), 2);
  EXPECT_FALSE(fs::exists(tmp("x.cls")));
  EXPECT_EQ(run({"diff", fx("car.cls"), fx("car.cls"), "-o", tmp("x.cls")}), 2);
  EXPECT_EQ(run({"symdiff", fx("car.cls"), fx("car.cls"), "-o", tmp("x.cls")}), 2);
  EXPECT_FALSE(fs::exists(tmp("x.cls")));

  EXPECT_EQ(run({"union", fx("car.cls"), "-o", tmp("x.cls")}), 1);
  EXPECT_EQ(run({"union", fx("car.cls"), tmp("missing.cls"), "-o", tmp("x.cls")}), 1);
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"bogus"}), 1);
  EXPECT_EQ(run({"--help"}), 0);

  std::string text = read_file(fixture("vehicles.cls"));
  const std::string needle = "\"type_name\": \"Motorcycle\",\n      \"specification\": [\n";
  text.insert(text.find(needle) + needle.size(),
              "        {\"name\": \"color\", \"datatype\": \"text\", \"value\": null},\n");
  write_file_atomic(tmp("broken.cls"), text);
  EXPECT_EQ(run({"validate", tmp("broken.cls")}), 3);
  EXPECT_NE(out_.str().find("color"), std::string::npos);
  EXPECT_EQ(run({"union", tmp("broken.cls"), fx("car.cls"), "-o", tmp("x.cls")}), 3);
}

TEST_F(Cli, ValidateReportsEachFile) {
  EXPECT_EQ(run({"validate", fx("car.cls"), fx("vehicles.cls")}), 0);
  EXPECT_NE(out_.str().find("car.cls: ok"), std::string::npos);
  EXPECT_NE(out_.str().find("vehicles.cls: ok"), std::string::npos);
}

TEST_F(Cli, GoldenOutputs) {
  struct Case {
    std::vector<std::string> args;
    const char* golden;
  };
  const std::vector<Case> cases = {
      {{"union", fx("car.cls"), fx("boat.cls"), "--name", "CarBoat"}, "union_car_boat.cls"},
      {{"intersect", fx("car.cls"), fx("motorcycle.cls"), "--name", "Common"}, "intersection_car_motorcycle.cls"},
      {{"diff", fx("car.cls"), fx("motorcycle.cls"), "--name", "CarOnly"}, "difference_car_motorcycle.cls"},
      {{"diff", fx("car.cls"), fx("motorcycle.cls"), fx("boat.cls"), "--name", "CarOnly"}, "difference_car_motorcycle.cls"},
      {{"symdiff", fx("car.cls"), fx("motorcycle.cls"), "--name", "Distinct"}, "symdiff_car_motorcycle.cls"},
      {{"symdiff", fx("car.cls"), fx("carplus.cls"), "--name", "Extras"}, "symdiff_car_carplus.cls"},
      {{"union", fx("car.cls"), fx("car.cls"), "--name", "Car"}, "../fixtures/car.cls"},
  };
  for (const auto& c : cases) {
    for (const char* strategy : {"naive", "keyed"}) {
      auto args = c.args;
      args.insert(args.end(), {"-o", tmp("out.cls"), "--strategy", strategy});
      ASSERT_EQ(run(args), 0) << c.golden << ": " << err_.str();
      EXPECT_EQ(read_file(tmp("out.cls")), read_file(golden(c.golden))) << c.golden << " " << strategy;
    }
  }
}

TEST_F(Cli, CloneAndFlatten) {
  ASSERT_EQ(run({"clone", fx("car.cls"), "--name", "Auto", "-o", tmp("auto.cls")}), 0);
  AnyClass a = load(tmp("auto.cls"));
  EXPECT_EQ(a.name(), "Auto");
  EXPECT_TRUE(eq_type(a.homogeneous(), car()));
  EXPECT_EQ(run({"clone", fx("car.cls"), "-o", tmp("auto.cls")}), 1);
  EXPECT_EQ(run({"clone", fx("car.cls"), "--name", "no good", "-o", tmp("auto.cls")}), 1);

  ASSERT_EQ(run({"flatten", fx("vehicles.cls"), "--index", "2", "-o", tmp("m.cls")}), 0);
  AnyClass m = load(tmp("m.cls"));
  EXPECT_EQ(m.name(), "Motorcycle");
  EXPECT_TRUE(eq_type(m.homogeneous(), motorcycle()));
  EXPECT_EQ(run({"flatten", fx("vehicles.cls"), "--index", "3", "-o", tmp("m.cls")}), 1);
}

TEST_F(Cli, EmitAndDescriptorFlag) {
  ASSERT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("v.cls"), "--descriptor", tmp("v.desc")}), 0);
  Descriptor d = load_descriptor(tmp("v.desc"));
  EXPECT_EQ(d.op, "union");
  EXPECT_EQ(d.inputs, (std::vector<std::string>{"Car", "Motorcycle"}));
  EXPECT_EQ(d.payload, load(tmp("v.cls")));

  ASSERT_EQ(run({"emit", tmp("v.desc"), "-o", tmp("again.desc")}), 0);
  EXPECT_EQ(load_descriptor(tmp("again.desc")).op, "union");

  ASSERT_EQ(run({"emit", fx("car.cls"), "-o", tmp("car.desc")}), 0);
  Descriptor c = load_descriptor(tmp("car.desc"));
  EXPECT_TRUE(c.payload.is_homogeneous());
  EXPECT_EQ(c.op, "load");
}

TEST_F(Cli, RegisterAndList) {
  ASSERT_EQ(run({"register", tmp("reg"), fx("motorcycle.cls"), fx("car.cls")}), 0);
  ASSERT_EQ(run({"list", tmp("reg")}), 0);
  EXPECT_EQ(out_.str(), "Car\nMotorcycle\n");
}

// Each subcommand's file output equals calling the library directly.
TEST_F(Cli, ThinWrapper) {
  const AnyClass car_c = load(fx("car.cls")), moto = load(fx("motorcycle.cls")), boat_c = load(fx("boat.cls"));
  const std::vector<AnyClass> cm{car_c, moto};

  ASSERT_EQ(run({"union", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("u.cls"), "--name", "U"}), 0);
  EXPECT_TRUE(same_types(types_of(load(tmp("u.cls"))), types_of(union_of(cm, Strategy::keyed, "U").result)));

  ASSERT_EQ(run({"intersect", fx("car.cls"), fx("motorcycle.cls"), "-o", tmp("i.cls")}), 0);
  EXPECT_TRUE(same_types(types_of(load(tmp("i.cls"))), types_of(intersection_of(cm, Strategy::keyed, "I").result)));

  const std::vector<AnyClass> mb{moto, boat_c};
  ASSERT_EQ(run({"diff", fx("car.cls"), fx("motorcycle.cls"), fx("boat.cls"), "-o", tmp("d.cls")}), 0);
  EXPECT_TRUE(same_types(types_of(load(tmp("d.cls"))), types_of(difference_of(car_c, mb, Strategy::keyed, "D").result)));

  ASSERT_EQ(run({"symdiff", fx("car.cls"), fx("boat.cls"), "-o", tmp("s.cls")}), 0);
  EXPECT_TRUE(same_types(types_of(load(tmp("s.cls"))),
                         types_of(symmetric_difference_of(car_c, boat_c, Strategy::keyed, "S").result)));
}
