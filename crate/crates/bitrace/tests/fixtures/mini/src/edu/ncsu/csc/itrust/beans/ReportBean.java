package edu.ncsu.csc.itrust.beans;

/**
 * Describes one adverse report about a drug.
 */
public class ReportBean {
	private String comment;
	private String drug;

	public String getComment() {
		return comment;
	}
}
