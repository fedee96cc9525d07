#!/usr/bin/env node
import { runFigureCli } from "./cli.js";

process.exit(runFigureCli("fig3cr", process.argv.slice(2)));
