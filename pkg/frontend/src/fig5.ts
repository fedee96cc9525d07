#!/usr/bin/env node
import { runFigureCli } from "./cli.js";

process.exit(runFigureCli("fig5", process.argv.slice(2)));
