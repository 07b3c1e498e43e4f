import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";

describe("parseCsv", () => {
  it("splits plain rows", () => {
    expect(parseCsv("a,b,c\n1,2,3\n")).toEqual([["a", "b", "c"], ["1", "2", "3"]]);
  });

  it("keeps commas inside quoted fields", () => {
    expect(parseCsv('a,"x, y",c\n')).toEqual([["a", "x, y", "c"]]);
  });

  it("unescapes doubled quotes", () => {
    expect(parseCsv('"say ""hi""",b\n')).toEqual([['say "hi"', "b"]]);
  });

  it("keeps newlines inside quoted fields", () => {
    expect(parseCsv('"line one\nline two",b\n')).toEqual([["line one\nline two", "b"]]);
  });

  it("handles CRLF line endings", () => {
    expect(parseCsv("a,b\r\nc,d\r\n")).toEqual([["a", "b"], ["c", "d"]]);
  });

  it("does not invent a row for the trailing newline", () => {
    expect(parseCsv("a,b\n")).toEqual([["a", "b"]]);
  });

  it("keeps empty fields", () => {
    expect(parseCsv("a,,c\n")).toEqual([["a", "", "c"]]);
  });
});
