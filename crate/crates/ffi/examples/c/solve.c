/* Reads a digraph document, solves with unit weights and prints the
 * certificate; with a second argument, also prints the Clar and Fries
 * numbers of the plane graph in that file. */
#include <stdio.h>
#include <stdlib.h>

#include "sosi.h"

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long len = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *buf = malloc((size_t)len + 1);
    if (buf && fread(buf, 1, (size_t)len, f) != (size_t)len) {
        free(buf);
        buf = NULL;
    }
    if (buf) buf[len] = '\0';
    fclose(f);
    return buf;
}

static int fail(const char *what, SosiStatus status) {
    const char *msg = sosi_last_error();
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)status, msg ? msg : "?");
    return 1;
}

int main(int argc, char **argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: %s DIGRAPH.json [PLANE.json]\n", argv[0]);
        return 2;
    }
    char *text = slurp(argv[1]);
    if (!text) return 2;

    SosiDigraph *d = NULL;
    SosiStatus st = sosi_digraph_from_json(text, &d);
    free(text);
    if (st != SOSI_STATUS_OK) return fail("parse", st);

    size_t n = sosi_digraph_node_count(d);
    int64_t *ones = malloc(n * sizeof *ones);
    for (size_t v = 0; v < n; v++) ones[v] = 1;

    SosiCertificate *cert = NULL;
    st = sosi_max_so_si(d, ones, ones, n, &cert);
    free(ones);
    if (st != SOSI_STATUS_OK) return fail("solve", st);

    int64_t num = 0, den = 1;
    sosi_certificate_value(cert, &num, &den);
    size_t sources = 0, sinks = 0;
    sosi_certificate_nodes(cert, 0, NULL, 0, &sources);
    sosi_certificate_nodes(cert, 1, NULL, 0, &sinks);
    printf("value %lld/%lld sources %zu sinks %zu\n", (long long)num, (long long)den, sources, sinks);

    char *json = NULL;
    if (sosi_certificate_to_json(cert, &json) == SOSI_STATUS_OK) {
        printf("%s\n", json);
        sosi_string_free(json);
    }
    sosi_certificate_free(cert);
    sosi_digraph_free(d);

    if (argc > 2) {
        char *ptext = slurp(argv[2]);
        if (!ptext) return 2;
        SosiPlaneGraph *g = NULL;
        st = sosi_plane_from_json(ptext, &g);
        free(ptext);
        if (st != SOSI_STATUS_OK) return fail("plane", st);
        size_t clar = 0, fries = 0;
        sosi_clar_number(g, &clar);
        sosi_fries_number(g, &fries);
        printf("clar %zu fries %zu\n", clar, fries);
        sosi_plane_free(g);
    }
    return 0;
}
