// Copyright 2026 The mfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the mfake executable through a shell, the way a user would.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <cmath>

#include "mfake/biosim/biosim.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("mfake_cli_" + std::string(info->name()) + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // stdout only; stderr goes to err.txt in the work dir.
  Result run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" MFAKE_CLI_PATH "' " + args +
                            " 2>>err.txt";
    Result r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = ::pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string stderr_text() const {
    std::ifstream in(dir_ / "err.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void provision(const std::string& extra = "") {
    ASSERT_EQ(run("--seed 11 rc-setup --n 64 --d 0.25 --out rc.dir " + extra).exit_code, 0)
        << stderr_text();
    ASSERT_EQ(run("--seed 12 register-user --rc rc.dir").exit_code, 0) << stderr_text();
    ASSERT_EQ(run("--seed 13 register-sp --rc rc.dir").exit_code, 0) << stderr_text();
  }

  static std::string key_of(const std::string& out, const std::string& who) {
    std::smatch m;
    const std::regex re(who + ": accepted key=([0-9a-f]+)");
    return std::regex_search(out, m, re) ? m[1].str() : std::string();
  }

  fs::path dir_;
};

TEST_F(CliTest, EndToEndSessionPrintsMatchingFingerprints) {
  provision();
  for (const char* transport : {"mem", "tcp"}) {
    const auto r = run("--seed 14 run-session --noise 0.01 --transport " + std::string(transport));
    EXPECT_EQ(r.exit_code, 0) << r.out << stderr_text();
    const auto ku = key_of(r.out, "user");
    EXPECT_EQ(ku.size(), 16u) << "fingerprint is 8 bytes of hex";
    EXPECT_EQ(ku, key_of(r.out, "sp"));
    EXPECT_NE(r.out.find("keys match"), std::string::npos);
    EXPECT_NE(r.out.find("payload_bytes=448"), std::string::npos);
  }
}

TEST_F(CliTest, SeedFixesTheSessionKey) {
  provision();
  const auto a = run("--seed 21 run-session --noise 0.01");
  const auto b = run("--seed 21 run-session --noise 0.01");
  const auto c = run("--seed 22 run-session --noise 0.01");
  EXPECT_EQ(key_of(a.out, "user"), key_of(b.out, "user"));
  EXPECT_NE(key_of(a.out, "user"), key_of(c.out, "user"));
}

TEST_F(CliTest, FullKeyOnlyWithUnsafeFlag) {
  provision();
  const auto r = run("--seed 14 run-session --unsafe-print-key");
  EXPECT_EQ(key_of(r.out, "user").size(), 64u);
}

TEST_F(CliTest, WrongBiometricExitsNonzero) {
  provision();
  const auto r = run("--seed 14 run-session --noise 3");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("sp: aborted (auth-mismatch)"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("key="), std::string::npos);
}

TEST_F(CliTest, SeparateProcessesOverTcp) {
  provision();
  // The SP binds an ephemeral port and announces it on stdout.
  auto sp = std::async(std::launch::async, [&] {
    return run("--seed 31 run-session --transport tcp --listen 127.0.0.1:0 "
               "--timeout-ms 20000 > sp.out; echo \"exit=$?\" >> sp.out");
  });
  auto sp_out = [&] {
    std::ifstream in(dir_ / "sp.out");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string port;
  const std::regex announced("listening on 127\\.0\\.0\\.1:([0-9]+)");
  for (int i = 0; i < 400 && port.empty(); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(25));
    std::smatch m;
    const auto text = sp_out();
    if (std::regex_search(text, m, announced)) port = m[1].str();
  }
  ASSERT_FALSE(port.empty()) << "SP never announced its port: " << stderr_text();

  const auto user = run("--seed 32 run-session --transport tcp --connect 127.0.0.1:" + port +
                        " --noise 0.01");
  sp.wait();
  const auto sp_text = sp_out();
  EXPECT_EQ(user.exit_code, 0) << user.out << stderr_text();
  EXPECT_NE(sp_text.find("exit=0"), std::string::npos) << sp_text;
  EXPECT_FALSE(key_of(user.out, "user").empty());
  EXPECT_EQ(key_of(user.out, "user"), key_of(sp_text, "sp"));
}

TEST_F(CliTest, RevokedUserIsRejected) {
  provision();
  ASSERT_EQ(run("revoke --user user.rec --check").exit_code, 1);
  ASSERT_EQ(run("revoke --user user.rec").exit_code, 0) << stderr_text();
  EXPECT_EQ(run("revoke --user user.rec --check").exit_code, 0);
  const auto r = run("--seed 14 run-session");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("sp: aborted (revoked)"), std::string::npos) << r.out;
}

TEST_F(CliTest, TamperEveryByteIsCaught) {
  const auto r = run("--seed 5 tamper-test --all-bytes --n 4 --report report.csv");
  EXPECT_EQ(r.exit_code, 0) << r.out << stderr_text();
  EXPECT_NE(r.out.find("tampered sessions: 448 aborted: 448 keys exposed: 0 coverage: 100%"),
            std::string::npos)
      << r.out;
  std::ifstream in(dir_ / "report.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "frame,offset,mask,aborting_party,user,sp,key_exposed");
  std::size_t rows = 0, sp_rows = 0, user_rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.find("FAILED"), std::string::npos) << line;
    if (line.find(",sp,") != std::string::npos) ++sp_rows;
    if (line.find(",user,") != std::string::npos) ++user_rows;
  }
  EXPECT_EQ(rows, 448u);
  // MU1 and MU2 flips are caught by the SP, MS1 and MS2 flips by the user.
  EXPECT_EQ(sp_rows, 120u + 80u);
  EXPECT_EQ(user_rows, 216u + 32u);
}

TEST_F(CliTest, TamperAgainstProvisionedFiles) {
  provision();
  const auto r = run("--seed 6 tamper-test --rc rc.dir --random 20 --quiet");
  EXPECT_EQ(r.exit_code, 0) << r.out << stderr_text();
  EXPECT_NE(r.out.find("tampered sessions: 20 aborted: 20"), std::string::npos) << r.out;
}

TEST_F(CliTest, RateSweepColumnsAreMonotone) {
  const auto r = run("--seed 3 rate-sweep --d-min 0.05 --d-max 0.5 --points 10");
  ASSERT_EQ(r.exit_code, 0) << stderr_text();
  const auto reports = mfake::biosim::parse_sweep_csv(r.out);
  ASSERT_EQ(reports.size(), 10u);
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const auto& a = reports[i - 1];
    const auto& b = reports[i];
    auto sigma = [](double p, std::size_t n) { return std::sqrt(p * (1 - p) / double(n)); };
    EXPECT_GE(b.fmr + 2 * sigma(a.fmr, a.impostor_pairs), a.fmr) << "at d=" << b.d;
    EXPECT_LE(b.fnmr - 2 * sigma(a.fnmr, a.genuine_pairs), a.fnmr) << "at d=" << b.d;
  }
  EXPECT_DOUBLE_EQ(reports.front().d, 0.05);
  EXPECT_DOUBLE_EQ(reports.back().d, 0.5);
}

TEST_F(CliTest, ConfigFileSuppliesFlagsAndCommandLineWins) {
  {
    std::ofstream cfg(dir_ / "sweep.cfg");
    cfg << "# sweep settings\nn = 8\nidentities=50\npairs = 200\npoints=3\n"
           "d-min=0.1\nd-max=0.3\nseed=9\n";
  }
  const auto r = run("rate-sweep --config sweep.cfg --points 4");
  ASSERT_EQ(r.exit_code, 0) << stderr_text();
  const auto reports = mfake::biosim::parse_sweep_csv(r.out);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].genuine_pairs, 200u);
  EXPECT_EQ(run("rate-sweep --config sweep.cfg --points 4").out, r.out) << "seed from config";
}

TEST_F(CliTest, BadInputsExitWithErrors) {
  {
    std::ofstream cfg(dir_ / "bad.cfg");
    cfg << "no-such-flag = 1\n";
  }
  EXPECT_EQ(run("rate-sweep --config bad.cfg").exit_code, 2);
  EXPECT_EQ(run("run-session --rc missing.dir").exit_code, 2);
  EXPECT_NE(run("no-such-command").exit_code, 0);
  provision();
  EXPECT_EQ(run("rc-setup --out rc.dir").exit_code, 2) << "refuses to overwrite";
  EXPECT_EQ(run("run-session --listen 127.0.0.1:1").exit_code, 2) << "listen needs tcp";
}

}  // namespace
