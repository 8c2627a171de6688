#include "rtlnp/pgm.hpp"

#include <fstream>
#include <vector>

namespace rtlnp {

namespace {

using Kind = ImageIoError::Kind;

// Skips whitespace and '#' comment lines between header tokens.
void skip_separators(std::istream& in) {
  for (;;) {
    int ch = in.peek();
    if (ch == '#') {
      std::string line;
      std::getline(in, line);
    } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const std::filesystem::path& path,
                     const char* what) {
  skip_separators(in);
  long value = -1;
  if (!(in >> value) || value < 0)
    throw ImageIoError(Kind::CorruptData, path, std::string("bad ") + what + " in header");
  return value;
}

}  // namespace

std::string ImageIoError::describe(Kind kind, const std::filesystem::path& path,
                                   const std::string& detail) {
  const char* label = "";
  switch (kind) {
    case Kind::MissingFile: label = "missing file"; break;
    case Kind::UnsupportedFormat: label = "unsupported format"; break;
    case Kind::CorruptData: label = "corrupt image data"; break;
  }
  return std::string(label) + ": " + path.string() + " (" + detail + ")";
}

GrayImage load_grayscale(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec)
    throw ImageIoError(Kind::MissingFile, path, "no such file");

  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(Kind::MissingFile, path, "cannot open for reading");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P')
    throw ImageIoError(Kind::UnsupportedFormat, path, "not a PNM file");

  bool color = false;
  if (magic[1] == '5') {
    color = false;
  } else if (magic[1] == '6') {
    color = true;
  } else if (magic[1] == '1' || magic[1] == '2' || magic[1] == '3' ||
             magic[1] == '4') {
    throw ImageIoError(Kind::UnsupportedFormat, path,
                       std::string("PNM variant P") + magic[1] + " not supported");
  } else {
    throw ImageIoError(Kind::UnsupportedFormat, path, "not a PNM file");
  }

  const long width = read_header_int(in, path, "width");
  const long height = read_header_int(in, path, "height");
  const long maxval = read_header_int(in, path, "maxval");
  if (width < 1 || height < 1)
    throw ImageIoError(Kind::CorruptData, path, "degenerate dimensions");
  if (width > (1L << 20) || height > (1L << 20) || width * height > (1L << 28))
    throw ImageIoError(Kind::CorruptData, path, "implausible dimensions");
  if (maxval < 1 || maxval > 255)
    throw ImageIoError(Kind::UnsupportedFormat, path,
                       "maxval " + std::to_string(maxval) + " not supported");
  in.get();  // the single separator byte after maxval
  if (!in) throw ImageIoError(Kind::CorruptData, path, "truncated header");

  const std::size_t npix = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  GrayImage img(height, width);
  if (color) {
    std::vector<std::uint8_t> rgb(npix * 3);
    in.read(reinterpret_cast<char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
    if (static_cast<std::size_t>(in.gcount()) != rgb.size())
      throw ImageIoError(Kind::CorruptData, path, "truncated pixel data");
    for (std::size_t i = 0; i < npix; ++i)
      img.data()[i] = luma601(rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]);
  } else {
    in.read(reinterpret_cast<char*>(img.data()), static_cast<std::streamsize>(npix));
    if (static_cast<std::size_t>(in.gcount()) != npix)
      throw ImageIoError(Kind::CorruptData, path, "truncated pixel data");
  }
  return img;
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  if (img.rows() < 1 || img.cols() < 1)
    throw std::invalid_argument("cannot save an empty image");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace rtlnp
