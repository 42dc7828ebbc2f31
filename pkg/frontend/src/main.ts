#!/usr/bin/env node
import { runSpec } from "./spec.js";

function main(argv: string[]): number {
  if (argv.length !== 1 || argv[0] === "--help") {
    console.error("usage: wenodec-figures <figure-spec.json>");
    return argv[0] === "--help" ? 0 : 1;
  }
  try {
    for (const path of runSpec(argv[0])) console.log(`wrote ${path}`);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

process.exit(main(process.argv.slice(2)));
