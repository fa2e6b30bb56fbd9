#include "cuspl/cache.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "cuspl/error.hpp"

namespace cuspl {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'U', 'S', 'P', 'L', 'C', 'F', '\0'};

template <typename T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> b{};
  auto u = static_cast<std::make_unsigned_t<T>>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    b[i] = static_cast<char>(u & 0xff);
    u >>= 8;
  }
  os.write(b.data(), b.size());
}

template <typename T>
T get_le(std::istream& is, const fs::path& file) {
  std::array<unsigned char, sizeof(T)> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw DomainError("coefficient cache truncated: " + file.string());
  }
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) u = (u << 8) | b[i];
  return static_cast<T>(u);
}

fs::path cache_name(const fs::path& dir, int weight, std::size_t n_max) {
  return dir / ("weight" + std::to_string(weight) + "_n" + std::to_string(n_max) + ".cfc");
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t file_checksum(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DomainError("cannot open " + file.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())), h);
  }
  return h;
}

fs::path cache_directory() {
  if (const char* d = std::getenv(kCacheDirEnv); d && *d) return fs::path(d);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "cuspl";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "cuspl";
  return fs::path(".cuspl-cache");
}

void save_coefficients(const CuspForm& form, const fs::path& file) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw DomainError("cannot write coefficient cache " + file.string());
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kCacheFormatVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(form.weight()));
  put_le<std::uint64_t>(os, form.n_max());
  std::vector<unsigned char> mag;
  for (std::size_t n = 1; n <= form.n_max(); ++n) {
    const mpz_srcptr z = form.coefficient(n).get_mpz_t();
    const std::size_t bytes = (mpz_sizeinbase(z, 2) + 7) / 8;
    mag.assign(bytes + 1, 0);
    std::size_t count = 0;
    mpz_export(mag.data(), &count, -1, 1, 0, 0, z);
    const std::int32_t len = static_cast<std::int32_t>(count);
    put_le<std::int32_t>(os, mpz_sgn(z) < 0 ? -len : len);
    os.write(reinterpret_cast<const char*>(mag.data()), static_cast<std::streamsize>(count));
  }
  if (!os) throw DomainError("failed writing coefficient cache " + file.string());
}

CuspForm load_coefficients(const fs::path& file, std::size_t n_max) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw DomainError("cannot open coefficient cache " + file.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw DomainError("not a coefficient cache: " + file.string());
  const auto version = get_le<std::uint32_t>(is, file);
  if (version != kCacheFormatVersion) {
    std::ostringstream os;
    os << "coefficient cache version " << version << " unsupported (expected "
       << kCacheFormatVersion << "): " << file.string();
    throw DomainError(os.str());
  }
  const int weight = static_cast<int>(get_le<std::uint32_t>(is, file));
  const auto stored = get_le<std::uint64_t>(is, file);
  if (n_max == 0) n_max = stored;
  if (n_max > stored) throw DomainError("coefficient cache holds fewer terms than requested");
  std::vector<mpz_class> coeffs(n_max + 1);
  std::vector<unsigned char> mag;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto len = get_le<std::int32_t>(is, file);
    const std::size_t count = static_cast<std::size_t>(len < 0 ? -static_cast<std::int64_t>(len) : len);
    mag.resize(count);
    if (count && !is.read(reinterpret_cast<char*>(mag.data()), static_cast<std::streamsize>(count))) {
      throw DomainError("coefficient cache truncated: " + file.string());
    }
    mpz_import(coeffs[n].get_mpz_t(), count, -1, 1, 0, 0, mag.data());
    if (len < 0) coeffs[n] = -coeffs[n];
  }
  return CuspForm::from_coefficients(weight, std::move(coeffs));
}

CachedForm load_or_build(int weight, std::size_t n_max) {
  return load_or_build(weight, n_max, cache_directory());
}

CachedForm load_or_build(int weight, std::size_t n_max, const fs::path& dir) {
  if (!is_supported_weight(weight)) return {build_eigenform(weight, n_max), {}, 0};
  std::error_code ec;
  if (fs::is_directory(dir, ec)) {
    const std::regex pat("weight" + std::to_string(weight) + "_n([0-9]+)\\.cfc");
    fs::path best;
    std::size_t best_n = 0;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      std::smatch m;
      const std::string name = entry.path().filename().string();
      if (!std::regex_match(name, m, pat)) continue;
      const std::size_t cap = std::stoull(m[1].str());
      if (cap >= n_max && (best_n == 0 || cap < best_n)) {
        best = entry.path();
        best_n = cap;
      }
    }
    if (best_n != 0) {
      try {
        return {load_coefficients(best, n_max), best, file_checksum(best)};
      } catch (const DomainError&) {
        // unreadable cache file: rebuild below
      }
    }
  }
  CuspForm form = build_eigenform(weight, n_max);
  fs::create_directories(dir, ec);
  const fs::path file = cache_name(dir, weight, n_max);
  const fs::path tmp = file.string() + ".tmp" + std::to_string(::getpid());
  try {
    save_coefficients(form, tmp);
    fs::rename(tmp, file);
    return {std::move(form), file, file_checksum(file)};
  } catch (const std::exception&) {
    fs::remove(tmp, ec);
    return {std::move(form), {}, 0};
  }
}

}  // namespace cuspl
