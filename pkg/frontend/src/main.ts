// Browser entry point: boot the dashboard against the same-origin API and
// keep the view state in the URL query string.

import { ApiClient } from "./api.js";
import { DashboardApp } from "./app.js";
import { decodeState } from "./state.js";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app container");

const app = new DashboardApp(
  root,
  new ApiClient(),
  decodeState(window.location.search),
  (query) => history.replaceState(null, "", `?${query}`),
);
void app.start();
