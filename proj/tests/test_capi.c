/* The shared library from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "d3tower.h"

static int failures = 0;

#define EXPECT(c)                                                   \
  do {                                                              \
    if (!(c)) {                                                     \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #c); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

int main(void) {
  const char *d4 = "{\"field\": {\"kind\": \"Q\"}, \"degree\": 4, \"G\": [\"(0 1 2 3)\", \"(1 3)\"],"
                   " \"H\": [\"(0 1 2 3)\"], \"K\": [\"(0 2)(1 3)\"]}";
  d3_tower *t = NULL;
  d3_report *r = NULL;
  int ok = 0;

  EXPECT(d3_tower_parse(d4, &t) == D3_OK);
  EXPECT(d3_check(t, 128, &r) == D3_OK);
  EXPECT(d3_report_ok(r) == 1);
  EXPECT(strstr(d3_report_json(r), "\"verdict\": true") != NULL);
  EXPECT(strcmp(d3_report_tsv(r), "") == 0);
  EXPECT(d3_report_reverify(d3_report_json(r), 128, &ok) == D3_OK && ok == 1);
  d3_report_free(r);
  d3_tower_free(t);

  EXPECT(d3_tower_parse("{\"degree\": 3,\n \"G\": [}", &t) == D3_PARSE_ERROR);
  EXPECT(strstr(d3_last_error(), "line 2") != NULL);
  EXPECT(d3_is_input_error(D3_PARSE_ERROR) && !d3_is_input_error(D3_NOT_RD3));
  EXPECT(strcmp(d3_status_name(D3_NOT_RD3), "NotRD3") == 0);
  EXPECT(strcmp(d3_status_name(D3_IO_ERROR), "IOError") == 0);

  const char *c2 = "{\"degree\": 3, \"G\": [\"(0 1 2)\", \"(0 1)\"], \"H\": [\"(0 1)\"], \"K\": [\"(0 1)\"]}";
  t = NULL;
  EXPECT(d3_tower_parse(c2, &t) == D3_OK);
  r = NULL;
  EXPECT(d3_structures(t, 128, &r) == D3_NOT_RD3 && r == NULL);
  d3_tower_free(t);

  EXPECT(d3_scan(6, "Q", 128, 2, &r) == D3_OK);
  EXPECT(d3_report_ok(r) == 1);
  EXPECT(strncmp(d3_report_tsv(r), "group\t", 6) == 0);
  d3_report_free(r);
  EXPECT(d3_scan(6, "Fp:9", 128, 1, &r) == D3_INVALID_INPUT);
  EXPECT(d3_scan(400, "Q", 128, 1, &r) == D3_CAP_EXCEEDED);
  EXPECT(d3_tower_load("/nonexistent/spec.json", &t) == D3_IO_ERROR);

  setenv("DEPTH_TOWER_CAP", "64", 1);
  EXPECT(d3_default_cap() == 64);
  setenv("DEPTH_TOWER_CAP", "junk", 1);
  EXPECT(d3_default_cap() == 128);

  if (failures)
    fprintf(stderr, "%d failures\n", failures);
  return failures ? 1 : 0;
}
