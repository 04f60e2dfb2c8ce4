// Minimal Markdown renderer for model-generated reports. The input is
// untrusted, so every character is HTML-escaped before block and span
// transforms insert the only markup that can reach the DOM.

const ENTITIES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&#39;",
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"']/g, (ch) => ENTITIES[ch]);
}

function spans(escaped: string): string {
  return escaped
    .replace(/`([^`]+)`/g, "<code>$1</code>")
    .replace(/\*\*([^*]+)\*\*/g, "<strong>$1</strong>")
    .replace(/\*([^*]+)\*/g, "<em>$1</em>");
}

/** Render Markdown text to sanitized HTML. */
export function renderMarkdown(text: string): string {
  const lines = text.split(/\r?\n/);
  const out: string[] = [];
  let list: "ul" | "ol" | null = null;
  let paragraph: string[] = [];

  const closeList = () => {
    if (list) {
      out.push(`</${list}>`);
      list = null;
    }
  };
  const closeParagraph = () => {
    if (paragraph.length) {
      out.push(`<p>${spans(paragraph.join(" "))}</p>`);
      paragraph = [];
    }
  };

  for (const raw of lines) {
    const line = raw.trimEnd();
    const escaped = escapeHtml(line.trim());

    const heading = /^(#{1,4})\s+(.*)$/.exec(line.trim());
    if (heading) {
      closeParagraph();
      closeList();
      const level = heading[1].length;
      out.push(`<h${level}>${spans(escapeHtml(heading[2]))}</h${level}>`);
      continue;
    }
    const bullet = /^[-*]\s+(.*)$/.exec(line.trim());
    if (bullet) {
      closeParagraph();
      if (list !== "ul") {
        closeList();
        out.push("<ul>");
        list = "ul";
      }
      out.push(`<li>${spans(escapeHtml(bullet[1]))}</li>`);
      continue;
    }
    const ordered = /^\d+[.)]\s+(.*)$/.exec(line.trim());
    if (ordered) {
      closeParagraph();
      if (list !== "ol") {
        closeList();
        out.push("<ol>");
        list = "ol";
      }
      out.push(`<li>${spans(escapeHtml(ordered[1]))}</li>`);
      continue;
    }
    if (escaped === "") {
      closeParagraph();
      closeList();
      continue;
    }
    closeList();
    paragraph.push(escaped);
  }
  closeParagraph();
  closeList();
  return out.join("\n");
}
