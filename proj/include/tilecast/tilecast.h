/*
 * Copyright (c) 2026, The Tilecast Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TILECAST_TILECAST_H
#define TILECAST_TILECAST_H

#include <stddef.h>
#include <stdint.h>

#if defined(TILECAST_BUILDING_LIBRARY)
#define TC_API __attribute__((visibility("default")))
#else
#define TC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values other than TC_OK leave a message for tc_last_error(). */
typedef enum tc_status {
  TC_OK = 0,
  TC_ERR_INVALID_ARGUMENT = 1,
  TC_ERR_INVALID_GEOMETRY = 2,
  TC_ERR_INVALID_PIXEL_BUFFER = 3,
  TC_ERR_CODEC = 4,
  TC_ERR_PARSE = 5,
  TC_ERR_VALIDATION = 6,
  TC_ERR_LOAD = 7,
  TC_ERR_CAPTURE = 8,
  TC_ERR_MUTATION = 9,
  TC_ERR_NOT_FOUND = 10,
  TC_ERR_CONFLICT = 11,
  TC_ERR_SEQUENCE = 12,
  TC_ERR_INTEGRITY = 13,
  TC_ERR_TRANSPORT = 14,
  TC_ERR_CAPACITY = 15,
  TC_ERR_IO = 16,
  TC_ERR_INTERNAL = 99
} tc_status;

TC_API const char* tc_version(void);
TC_API const char* tc_status_name(tc_status status);
/* Message of the last failed call on this thread; "" if none. */
TC_API const char* tc_last_error(void);
/* Frees strings returned through char** out-parameters. NULL is ignored. */
TC_API void tc_string_free(char* s);

/* ---- protocol ---------------------------------------------------------- */

enum { TC_TILE_SIZE = 256, TC_HEX_DIGEST_LEN = 33 };

/* Lowercase hex MD5 of data, NUL-terminated, into out[33]. */
TC_API tc_status tc_md5_hex(const void* data, size_t len, char out[TC_HEX_DIGEST_LEN]);

/* Signature of the tile at (col, row) of a page at url; rgba holds
 * width*height*4 bytes of the tile's pixels. */
TC_API tc_status tc_tile_signature(const char* url, int64_t col, int64_t row, int64_t width,
                                   int64_t height, const uint8_t* rgba, size_t rgba_len,
                                   char out[TC_HEX_DIGEST_LEN]);

TC_API tc_status tc_grid_size(int64_t scrollable_width, int64_t scrollable_height,
                              int64_t* cols, int64_t* rows);

/* Tiles intersecting a viewport, row-major, as (col, row) pairs in out.
 * *count receives the number of tiles even when capacity is too small, in
 * which case TC_ERR_CAPACITY is returned and out holds the first capacity. */
TC_API tc_status tc_visible_tiles(int64_t viewport_width, int64_t viewport_height,
                                  int64_t scroll_x, int64_t scroll_y, int64_t scrollable_width,
                                  int64_t scrollable_height, int64_t* out_pairs,
                                  size_t capacity_pairs, size_t* count);

/* ---- relay server ------------------------------------------------------ */

typedef struct tc_relay tc_relay;

typedef struct tc_relay_config {
  const char* config_path;    /* JSON config file, or NULL */
  int use_env;                /* apply TILECAST_* environment overrides */
  const char* listen_address; /* overrides file/env when not NULL */
  int port;                   /* overrides when >= 0; 0 picks a free port */
  const char* storage_root;   /* overrides when not NULL; "" = memory only */
  const char* viewer_root;    /* overrides when not NULL */
} tc_relay_config;

TC_API void tc_relay_config_init(tc_relay_config* config);
/* Resolves the configuration and binds the listening socket. */
TC_API tc_status tc_relay_create(const tc_relay_config* config, tc_relay** out);
/* Serves on a background thread. */
TC_API tc_status tc_relay_start(tc_relay* relay);
/* Serves on the calling thread until tc_relay_stop is called elsewhere. */
TC_API tc_status tc_relay_run(tc_relay* relay);
TC_API tc_status tc_relay_stop(tc_relay* relay);
TC_API int tc_relay_port(const tc_relay* relay);
TC_API void tc_relay_destroy(tc_relay* relay);

/* ---- publisher --------------------------------------------------------- */

typedef struct tc_publish_options {
  const char* server_url;
  const char* script_path;
  const char* docs_dir; /* NULL: the script's directory */
  double tick_hz;
  double reference_interval_s; /* 0 disables reference captures */
  const char* codec;            /* "png", "jpeg:Q", "auto", "auto:Q" */
  const char* privacy;          /* "all", "none" or "email,ssn,phone,address" */
  int publish_text;
  int realtime;
  int drain_missing_on_end;
} tc_publish_options;

TC_API void tc_publish_options_init(tc_publish_options* options);
/* Runs the scripted session; *out_json receives the session statistics. */
TC_API tc_status tc_publish(const tc_publish_options* options, char** out_json);

/* ---- bench ------------------------------------------------------------- */

TC_API tc_status tc_bench_generate(uint64_t seed, const char* out_dir);

typedef struct tc_bench_options {
  const char* mode; /* "tiled" or "fullframe" */
  const char* script_path;
  const char* docs_dir; /* NULL: <script dir>/docs */
  const char* server_url; /* tiled only; NULL runs an in-process relay */
  int viewers;
  int jpeg_quality;
  double tick_hz;
  double reference_interval_s;
  const char* codec;
  uint64_t header_bytes;
} tc_bench_options;

TC_API void tc_bench_options_init(tc_bench_options* options);
/* *out_json receives the bandwidth report. */
TC_API tc_status tc_bench_run(const tc_bench_options* options, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TILECAST_TILECAST_H */
