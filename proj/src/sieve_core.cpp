#include "ntlab/sieve_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"

namespace ntlab {

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t SpfTable::p_min(std::uint64_t n) const {
  if (n == 1) return kPminInfinity;
  return spf_[n];
}

std::uint64_t SpfTable::p_max(std::uint64_t n) const {
  std::uint64_t largest = 1;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    largest = p;
    while (n % p == 0) n /= p;
  }
  return largest;
}

SpfTable build_spf(std::uint64_t limit, std::uint64_t segment_length) {
  if (limit < 2) throw DomainError("build_spf: limit must be >= 2");
  if (limit > 0xFFFFFFFFull) throw DomainError("build_spf: limit exceeds 32-bit storage");
  if (segment_length == 0) segment_length = kDefaultSegmentLength;
  std::vector<std::uint32_t> spf(limit + 1, 0);
  spf[1] = 1;
  const auto base = small_primes(isqrt(limit));
  const std::uint64_t n_segments = (limit - 1 + segment_length - 1) / segment_length;
  parallel_chunks(n_segments, [&](std::size_t s) {
    const std::uint64_t lo = 2 + s * segment_length;
    const std::uint64_t hi = std::min(limit, lo + segment_length - 1);
    for (const std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p) {
        if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(p);
      }
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(n);
    }
  });
  return SpfTable(limit, std::move(spf));
}

std::vector<PrimePower> factorize(std::uint64_t n, const SpfTable& table) {
  if (n < 1 || n > table.limit()) throw DomainError("factorize: n out of table range");
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint64_t p = table.spf(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

PrimeList primes_from(const SpfTable& table) {
  PrimeList list{table.limit(), {}};
  for (std::uint64_t n = 2; n <= table.limit(); ++n) {
    if (table.spf(n) == n) list.primes.push_back(n);
  }
  return list;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit,
                    std::uint64_t segment_length) {
  if (hi < 2 || hi <= lo) return;
  const auto base = small_primes(isqrt(hi));
  std::vector<char> composite;
  for (std::uint64_t seg_lo = std::max<std::uint64_t>(lo + 1, 2); seg_lo <= hi;
       seg_lo += segment_length) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + segment_length - 1);
    composite.assign(seg_hi - seg_lo + 1, 0);
    for (const std::uint64_t p : base) {
      if (p * p > seg_hi) break;
      std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= seg_hi; m += p) composite[m - seg_lo] = 1;
    }
    for (std::uint64_t n = seg_lo; n <= seg_hi; ++n) {
      if (!composite[n - seg_lo]) visit(n);
    }
  }
}

PrimeList build_primes(std::uint64_t limit, std::uint64_t segment_length) {
  PrimeList list{limit, {}};
  for_each_prime(0, limit, [&](std::uint64_t p) { list.primes.push_back(p); }, segment_length);
  return list;
}

cplx FunctionTable::at(std::uint64_t n) const {
  if (n < 1 || n > limit_) throw DomainError("FunctionTable: index out of range");
  return values_[n - 1];
}

Classical parse_classical(std::string_view name) {
  if (name == "phi") return Classical::phi;
  if (name == "sigma") return Classical::sigma;
  if (name == "mu") return Classical::mu;
  if (name == "lambda") return Classical::lambda;
  if (name == "tau") return Classical::tau;
  if (name == "omega") return Classical::omega;
  if (name == "bigomega") return Classical::bigomega;
  throw UsageError("unknown arithmetic function '" + std::string(name) + "'");
}

std::string_view to_string(Classical f) {
  switch (f) {
    case Classical::phi: return "phi";
    case Classical::sigma: return "sigma";
    case Classical::mu: return "mu";
    case Classical::lambda: return "lambda";
    case Classical::tau: return "tau";
    case Classical::omega: return "omega";
    case Classical::bigomega: return "bigomega";
  }
  return "?";
}

FunctionTable sieve_classical(Classical f, const SpfTable& table) {
  const std::uint64_t limit = table.limit();
  FunctionTable out(limit, std::string(to_string(f)));
  if (f == Classical::lambda) {
    out[1] = 0.0;
    for (std::uint64_t n = 2; n <= limit; ++n) {
      const std::uint64_t p = table.spf(n);
      std::uint64_t m = n;
      while (m % p == 0) m /= p;
      out[n] = (m == 1) ? std::log(static_cast<double>(p)) : 0.0;
    }
    return out;
  }
  // Integer-valued: build exactly in 64-bit arithmetic, then widen.
  std::vector<std::int64_t> v(limit + 1, 0);
  const bool additive = (f == Classical::omega || f == Classical::bigomega);
  v[1] = additive ? 0 : 1;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = table.spf(n);
    std::uint64_t rest = n;
    std::int64_t pe = 1;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      pe *= static_cast<std::int64_t>(p);
      ++e;
    }
    const auto ip = static_cast<std::int64_t>(p);
    std::int64_t local = 0;
    switch (f) {
      case Classical::phi: local = pe / ip * (ip - 1); break;
      case Classical::sigma: local = (pe * ip - 1) / (ip - 1); break;
      case Classical::mu: local = (e == 1) ? -1 : 0; break;
      case Classical::tau: local = e + 1; break;
      case Classical::omega: local = 1; break;
      case Classical::bigomega: local = e; break;
      case Classical::lambda: break;
    }
    v[n] = additive ? v[rest] + local : v[rest] * local;
  }
  for (std::uint64_t n = 1; n <= limit; ++n) out[n] = static_cast<double>(v[n]);
  return out;
}

FunctionTable sieve_classical(Classical f, std::uint64_t limit) {
  if (limit < 1) throw DomainError("sieve_classical: limit must be >= 1");
  if (limit == 1) {
    FunctionTable out(1, std::string(to_string(f)));
    const bool zero_at_one = f == Classical::lambda || f == Classical::omega ||
                             f == Classical::bigomega;
    out[1] = zero_at_one ? 0.0 : 1.0;
    return out;
  }
  return sieve_classical(f, build_spf(limit));
}

FunctionTable sieve_classical(std::string_view name, std::uint64_t limit) {
  return sieve_classical(parse_classical(name), limit);
}

FunctionTable tabulate(std::string label, std::uint64_t limit,
                       const std::function<cplx(std::uint64_t)>& fn) {
  FunctionTable out(limit, std::move(label));
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t n_chunks = (limit + kChunk - 1) / kChunk;
  parallel_chunks(n_chunks, [&](std::size_t c) {
    const std::uint64_t lo = 1 + c * kChunk;
    const std::uint64_t hi = std::min(limit, lo + kChunk - 1);
    for (std::uint64_t n = lo; n <= hi; ++n) out[n] = fn(n);
  });
  return out;
}

FunctionTable dirichlet_convolve(const FunctionTable& f, const FunctionTable& g) {
  if (f.limit() != g.limit()) throw DomainError("dirichlet_convolve: mismatched limits");
  const std::uint64_t limit = f.limit();
  FunctionTable out(limit, f.label() + "*" + g.label());
  for (std::uint64_t d = 1; d <= limit; ++d) {
    const cplx fd = f[d];
    if (fd == cplx{}) continue;
    for (std::uint64_t m = 1, n = d; n <= limit; ++m, n += d) out[n] += fd * g[m];
  }
  return out;
}

namespace {

constexpr char kMagic[4] = {'N', 'T', 'F', 'T'};
constexpr std::uint32_t kVersion = 1;

class Fnv1a {
 public:
  void update(const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= static_cast<unsigned char>(data[i]);
      hash_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

template <typename T>
void put_le(std::string& buf, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(const std::string& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw CacheError("table cache truncated");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  }
  pos += sizeof(T);
  return v;
}

}  // namespace

void save_table(const FunctionTable& table, const std::filesystem::path& path) {
  std::string buf;
  buf.reserve(32 + table.label().size() + 16 * table.limit());
  buf.append(kMagic, 4);
  put_le<std::uint32_t>(buf, kVersion);
  put_le<std::uint64_t>(buf, table.limit());
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(table.label().size()));
  buf.append(table.label());
  for (const cplx z : table.values()) {
    put_le<std::uint64_t>(buf, std::bit_cast<std::uint64_t>(z.real()));
    put_le<std::uint64_t>(buf, std::bit_cast<std::uint64_t>(z.imag()));
  }
  Fnv1a h;
  h.update(buf.data(), buf.size());
  put_le<std::uint64_t>(buf, h.value());

  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw CacheError("cannot write " + tmp);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw CacheError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

FunctionTable load_table(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CacheError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < 4 + 4 + 8 + 4 + 8 || !std::equal(kMagic, kMagic + 4, buf.begin())) {
    throw CacheError("bad table cache header in " + path.string());
  }
  std::size_t pos = 4;
  if (get_le<std::uint32_t>(buf, pos) != kVersion) throw CacheError("unsupported cache version");
  const auto limit = get_le<std::uint64_t>(buf, pos);
  const auto label_len = get_le<std::uint32_t>(buf, pos);
  if (pos + label_len > buf.size()) throw CacheError("table cache truncated");
  std::string label = buf.substr(pos, label_len);
  pos += label_len;
  if (buf.size() != pos + 16 * limit + 8) throw CacheError("table cache has wrong length");
  Fnv1a h;
  h.update(buf.data(), buf.size() - 8);
  std::size_t tail = buf.size() - 8;
  if (get_le<std::uint64_t>(buf, tail) != h.value()) throw CacheError("table cache checksum mismatch");
  std::vector<cplx> values(limit);
  for (auto& z : values) {
    const double re = std::bit_cast<double>(get_le<std::uint64_t>(buf, pos));
    const double im = std::bit_cast<double>(get_le<std::uint64_t>(buf, pos));
    z = {re, im};
  }
  return FunctionTable(std::move(label), std::move(values));
}

}  // namespace ntlab
