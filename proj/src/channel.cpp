#include "scra/channel.hpp"

namespace scra {

namespace {

constexpr std::uint8_t kVersion = 0x01;

std::uint8_t tag_byte(SchemeTag tag) { return static_cast<std::uint8_t>(tag); }

SchemeTag tag_from_byte(std::uint8_t b) {
  if (b > static_cast<std::uint8_t>(SchemeTag::Proposed))
    throw MalformedFrame("unknown scheme tag byte");
  return static_cast<SchemeTag>(b);
}

void put_field(std::vector<std::uint8_t>& out, const Int& v) {
  auto bytes = to_bytes_be(v);
  std::uint32_t n = static_cast<std::uint32_t>(bytes.size());
  out.push_back(static_cast<std::uint8_t>(n >> 24));
  out.push_back(static_cast<std::uint8_t>(n >> 16));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), bytes.begin(), bytes.end());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t byte() {
    if (pos_ >= data_.size()) throw MalformedFrame("truncated frame");
    return data_[pos_++];
  }

  Int field() {
    if (pos_ + 4 > data_.size()) throw MalformedFrame("truncated length prefix");
    std::uint32_t n = (std::uint32_t(data_[pos_]) << 24) | (std::uint32_t(data_[pos_ + 1]) << 16) |
                      (std::uint32_t(data_[pos_ + 2]) << 8) | std::uint32_t(data_[pos_ + 3]);
    pos_ += 4;
    if (pos_ + n > data_.size()) throw MalformedFrame("truncated field");
    Int v = from_bytes_be(data_.subspan(pos_, n));
    pos_ += n;
    return v;
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

unsigned field_count(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::HL:
    case SchemeTag::SLH: return 4;               // identity, c1, c2, T
    case SchemeTag::Kumar: return 6;             // sid, cid, d, c1, c2, T
    case SchemeTag::Proposed: return 7;          // id, R, cid, d, c1, c2, T
  }
  throw MalformedFrame("bad scheme tag");
}

}  // namespace

std::vector<std::uint8_t> encode(const LoginMessage& msg) {
  std::vector<std::uint8_t> out;
  out.push_back(kVersion);
  out.push_back(tag_byte(msg.tag));
  out.push_back(static_cast<std::uint8_t>(field_count(msg.tag)));
  put_field(out, msg.identity);
  if (msg.tag == SchemeTag::Proposed) {
    if (!msg.reg_number) throw std::invalid_argument("encode: proposed message lacks R");
    put_field(out, *msg.reg_number);
  }
  if (msg.tag == SchemeTag::Kumar || msg.tag == SchemeTag::Proposed) {
    if (!msg.c_id) throw std::invalid_argument("encode: message lacks check digit");
    put_field(out, Int(static_cast<unsigned long>(msg.c_id->value)));
    put_field(out, Int(msg.c_id->digits));
  }
  put_field(out, msg.c1);
  put_field(out, msg.c2);
  if (msg.t_stamp < 0) throw std::invalid_argument("encode: negative timestamp");
  put_field(out, Int(msg.t_stamp));
  return out;
}

LoginMessage decode(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  if (in.byte() != kVersion) throw MalformedFrame("bad version byte");
  SchemeTag tag = tag_from_byte(in.byte());
  if (in.byte() != field_count(tag)) throw MalformedFrame("field count mismatch");
  LoginMessage msg;
  msg.tag = tag;
  msg.identity = in.field();
  if (tag == SchemeTag::Proposed) msg.reg_number = in.field();
  if (tag == SchemeTag::Kumar || tag == SchemeTag::Proposed) {
    Int value = in.field();
    Int digits = in.field();
    if (digits < 1 || digits > 18) throw MalformedFrame("check digit count out of range");
    msg.c_id = CheckDigit{value.get_ui(), static_cast<unsigned>(digits.get_ui())};
  }
  msg.c1 = in.field();
  msg.c2 = in.field();
  Int t = in.field();
  if (!t.fits_slong_p()) throw MalformedFrame("timestamp out of range");
  msg.t_stamp = t.get_si();
  if (!in.done()) throw MalformedFrame("trailing bytes");
  return msg;
}

std::pair<std::vector<std::uint8_t>, long> Channel::deliver(
    const std::vector<std::uint8_t>& frame) {
  if (tap_) tap_(frame);
  long arrival = clock_.now() + delay_;
  return {frame, arrival};
}

}  // namespace scra
